//! Slice categories: objects of a base category anchored over a fixed base
//! object `C`, morphisms the base morphisms commuting with the anchors.
//!
//! The trivial class of a slice is the anchored image of the base trivial
//! class: `(X, x)` is trivial exactly when `X` is. Kernels and pullbacks are
//! computed as in the base, products become base pullbacks over `C`, and the
//! cokernel of a kernel anchors the base cokernel through the factored
//! triangle. Cokernels of maps that are not kernels may not exist at all in
//! a slice — those return `Unsupported` rather than inventing an anchor.

use std::sync::Arc;

use crate::backends::{workspace_for, HOM_BUDGET};
use crate::closure::{Congruence, CongruenceKind};
use crate::core::{
    Backend, BackendTag, Catalog, CokernelData, Coreflection, Error, Mor, Obj, ProductData,
    QuotientData, Result, Structure, Workspace,
};

/// Cap on the number of derived slice objects; the remainder is dropped
/// deterministically (catalog order) and recorded in the notes.
const MAX_SLICE_OBJECTS: usize = 48;

/// A base backend sliced over a fixed anchor object.
pub struct SliceBackend {
    base: Arc<Workspace>,
    anchor: Arc<Obj>,
}

impl SliceBackend {
    /// Slice the given base backend over `anchor`, which must be a valid base
    /// object.
    pub fn over(base_tag: &BackendTag, anchor: Arc<Obj>) -> Result<SliceBackend> {
        let base = workspace_for(base_tag)?;
        base.backend.validate_object(&anchor)?;
        Ok(SliceBackend { base, anchor })
    }

    /// Slice over the canonical anchor: the first non-trivial object of the
    /// base catalog (catalog order is deterministic, smallest objects first).
    pub fn canonical(base_tag: &BackendTag) -> Result<SliceBackend> {
        let base = workspace_for(base_tag)?;
        let anchor = base
            .catalog
            .objects
            .iter()
            .find(|o| !base.backend.is_trivial(o))
            .or_else(|| base.catalog.objects.first())
            .ok_or_else(|| {
                Error::InvalidInput(format!("base catalog of {base_tag} is empty"))
            })?
            .clone();
        Ok(SliceBackend { base, anchor })
    }

    /// The object everything in this slice is anchored over.
    pub fn anchor_object(&self) -> &Arc<Obj> {
        &self.anchor
    }

    /// Build the slice object `(under, anchor_map: under → C)`.
    pub fn obj(&self, under: &Arc<Obj>, anchor_map: Vec<usize>) -> Arc<Obj> {
        Arc::new(Obj {
            backend: self.tag(),
            size: under.size,
            structure: Structure::Slice {
                under: Box::new((**under).clone()),
                base: Box::new((*self.anchor).clone()),
                anchor: anchor_map,
            },
        })
    }

    fn base_backend(&self) -> &dyn Backend {
        self.base.backend.as_ref()
    }
}

/// The base object an anchored object lies over.
pub fn under_obj(x: &Obj) -> Result<Arc<Obj>> {
    match &x.structure {
        Structure::Slice { under, .. } => Ok(Arc::new((**under).clone())),
        _ => Err(Error::InvalidObject("expected a slice-structured object".into())),
    }
}

/// The anchor of a slice object, as a base morphism into the base object.
pub fn anchor_mor(x: &Obj) -> Result<Mor> {
    match &x.structure {
        Structure::Slice { under, base, anchor } => Ok(Mor::new(
            Arc::new((**under).clone()),
            Arc::new((**base).clone()),
            anchor.clone(),
        )),
        _ => Err(Error::InvalidObject("expected a slice-structured object".into())),
    }
}

/// A slice morphism as a morphism between the underlying base objects.
pub fn under_mor(f: &Mor) -> Result<Mor> {
    Ok(Mor::new(
        under_obj(&f.dom)?,
        under_obj(&f.cod)?,
        f.map.clone(),
    ))
}

fn anchor_table(x: &Obj) -> Result<&[usize]> {
    match &x.structure {
        Structure::Slice { anchor, .. } => Ok(anchor),
        _ => Err(Error::InvalidObject("expected a slice-structured object".into())),
    }
}

impl Backend for SliceBackend {
    fn tag(&self) -> BackendTag {
        BackendTag::Slice(Box::new(self.base.backend.tag()))
    }

    fn validate_object(&self, x: &Obj) -> Result<()> {
        let Structure::Slice { under, base, anchor } = &x.structure else {
            return Err(Error::InvalidObject(
                "expected a slice-structured object".into(),
            ));
        };
        if **base != *self.anchor {
            return Err(Error::InvalidObject(
                "slice object is anchored over a different base object".into(),
            ));
        }
        if x.size != under.size {
            return Err(Error::InvalidObject(
                "slice carrier size disagrees with the underlying object".into(),
            ));
        }
        self.base_backend().validate_object(under)?;
        let anchor = Mor::new(
            Arc::new((**under).clone()),
            self.anchor.clone(),
            anchor.clone(),
        );
        self.base_backend().validate_morphism(&anchor)
    }

    fn validate_morphism(&self, f: &Mor) -> Result<()> {
        self.base_backend().validate_morphism(&under_mor(f)?)?;
        let da = anchor_table(&f.dom)?;
        let ca = anchor_table(&f.cod)?;
        for x in f.dom.carrier() {
            if ca[f.apply(x)] != da[x] {
                return Err(Error::InvalidMorphism(format!(
                    "anchors disagree at element {x}"
                )));
            }
        }
        Ok(())
    }

    fn is_trivial(&self, x: &Obj) -> bool {
        match &x.structure {
            Structure::Slice { under, .. } => self.base_backend().is_trivial(under),
            _ => false,
        }
    }

    fn coreflection(&self, b: &Arc<Obj>) -> Coreflection {
        let under = under_obj(b).expect("coreflection of a non-slice object");
        let anchor = anchor_table(b).expect("coreflection of a non-slice object");
        let counit = self.base_backend().coreflection(&under).counit;
        let corefl_anchor: Vec<usize> = counit.map.iter().map(|&y| anchor[y]).collect();
        let dom = self.obj(&counit.dom, corefl_anchor);
        Coreflection {
            counit: Mor::new(dom, b.clone(), counit.map),
        }
    }

    fn trivial_map_char(&self, f: &Mor) -> Option<bool> {
        let under = under_mor(f).ok()?;
        self.base_backend().trivial_map_char(&under)
    }

    /// The product of two anchored objects is the base pullback of their
    /// anchors.
    fn product(&self, a: &Arc<Obj>, b: &Arc<Obj>) -> Result<ProductData> {
        let pb = self
            .base_backend()
            .pullback(&anchor_mor(a)?, &anchor_mor(b)?)?;
        let anchor_a = anchor_table(a)?;
        let anchor: Vec<usize> = pb.to_left.map.iter().map(|&y| anchor_a[y]).collect();
        let obj = self.obj(&pb.obj, anchor);
        Ok(ProductData {
            left: Mor::new(obj.clone(), a.clone(), pb.to_left.map),
            right: Mor::new(obj.clone(), b.clone(), pb.to_right.map),
            obj,
        })
    }

    fn substructure(&self, x: &Arc<Obj>, subset: &[usize]) -> Result<Mor> {
        let incl = self.base_backend().substructure(&under_obj(x)?, subset)?;
        let anchor_x = anchor_table(x)?;
        let anchor: Vec<usize> = incl.map.iter().map(|&y| anchor_x[y]).collect();
        let dom = self.obj(&incl.dom, anchor);
        Ok(Mor::new(dom, x.clone(), incl.map))
    }

    fn congruence_kind(&self) -> CongruenceKind {
        self.base_backend().congruence_kind()
    }

    fn smallest_congruence(&self, x: &Obj, seed: &[(usize, usize)]) -> Congruence {
        match &x.structure {
            Structure::Slice { under, .. } => {
                self.base_backend().smallest_congruence(under, seed)
            }
            _ => self.base_backend().smallest_congruence(x, seed),
        }
    }

    fn quotient(&self, x: &Arc<Obj>, c: &Congruence) -> Result<QuotientData> {
        let data = self.base_backend().quotient(&under_obj(x)?, c)?;
        let anchor_x = anchor_table(x)?;
        let anchor = descend_anchor(anchor_x, &data.projection.map, data.obj.size)?;
        let anchored = Mor::new(data.obj.clone(), self.anchor.clone(), anchor.clone());
        self.base_backend()
            .validate_morphism(&anchored)
            .map_err(|e| Error::Unsupported(format!("quotient anchor is not a morphism: {e}")))?;
        let obj = self.obj(&data.obj, anchor);
        Ok(QuotientData {
            projection: Mor::new(x.clone(), obj.clone(), data.projection.map),
            obj,
            class_of: data.class_of,
        })
    }

    fn cokernel(&self, f: &Mor) -> Result<CokernelData> {
        let data = self.base_backend().cokernel(&under_mor(f)?)?;
        let anchor_y = anchor_table(&f.cod)?;
        let anchor = descend_anchor(anchor_y, &data.q.map, data.q.cod.size)?;
        let anchored = Mor::new(data.q.cod.clone(), self.anchor.clone(), anchor.clone());
        self.base_backend()
            .validate_morphism(&anchored)
            .map_err(|e| Error::Unsupported(format!("cokernel anchor is not a morphism: {e}")))?;
        let obj = self.obj(&data.q.cod, anchor);
        Ok(CokernelData {
            q: Mor::new(f.cod.clone(), obj, data.q.map),
            congruence: data.congruence,
        })
    }

    fn kernel_direct(&self, f: &Mor) -> Option<Mor> {
        let k = self.base_backend().kernel_direct(&under_mor(f).ok()?)?;
        let anchor_x = anchor_table(&f.dom).ok()?;
        let anchor: Vec<usize> = k.map.iter().map(|&y| anchor_x[y]).collect();
        let dom = self.obj(&k.dom, anchor);
        Some(Mor::new(dom, f.dom.clone(), k.map))
    }

    fn epis_are_surjections(&self) -> bool {
        self.base_backend().epis_are_surjections()
    }

    /// A slice map is a normal epi exactly when its underlying base map is,
    /// so the base characterisation transfers unchanged.
    fn normal_epi_char(&self, f: &Mor) -> Option<bool> {
        let under = under_mor(f).ok()?;
        self.base_backend().normal_epi_char(&under)
    }

    fn enumerate_homs(&self, x: &Arc<Obj>, y: &Arc<Obj>, budget: usize) -> Option<Vec<Mor>> {
        let (ux, uy) = (under_obj(x).ok()?, under_obj(y).ok()?);
        let (da, ca) = (anchor_table(x).ok()?, anchor_table(y).ok()?);
        let homs = self.base_backend().enumerate_homs(&ux, &uy, budget)?;
        Some(
            homs.into_iter()
                .filter(|f| f.map.iter().enumerate().all(|(e, &v)| ca[v] == da[e]))
                .map(|f| Mor::new(x.clone(), y.clone(), f.map))
                .collect(),
        )
    }

    fn catalog(&self) -> Catalog {
        let mut objects: Vec<Arc<Obj>> = Vec::new();
        let mut notes = Vec::new();
        for x in &self.base.catalog.objects {
            let Some(anchors) = self
                .base_backend()
                .enumerate_homs(x, &self.anchor, HOM_BUDGET)
            else {
                notes.push(format!(
                    "anchor maps from a {}-element object exceeded the enumeration budget; \
                     object skipped",
                    x.size
                ));
                continue;
            };
            for a in anchors {
                objects.push(self.obj(x, a.map));
            }
        }
        objects.sort();
        objects.dedup();
        if objects.len() > MAX_SLICE_OBJECTS {
            notes.push(format!(
                "derived slice catalog capped at {MAX_SLICE_OBJECTS} of {} anchored objects",
                objects.len()
            ));
            objects.truncate(MAX_SLICE_OBJECTS);
        }
        let mut catalog = Catalog::build(self, objects, HOM_BUDGET)
            .expect("derived slice catalog is well-formed");
        catalog.notes.extend(notes);
        catalog
    }
}

/// Push an anchor table down a surjection: the descended table when the
/// anchor is constant on fibres, otherwise `Unsupported` (the anchored
/// quotient does not exist).
fn descend_anchor(anchor: &[usize], projection: &[usize], cod_size: usize) -> Result<Vec<usize>> {
    let mut out = vec![usize::MAX; cod_size];
    for (e, &cls) in projection.iter().enumerate() {
        if out[cls] == usize::MAX {
            out[cls] = anchor[e];
        } else if out[cls] != anchor[e] {
            return Err(Error::Unsupported(format!(
                "anchor is not constant on the fibre of class {cls}"
            )));
        }
    }
    if out.iter().any(|&v| v == usize::MAX) {
        return Err(Error::Unsupported(
            "projection is not surjective; anchor cannot descend".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::identity;

    fn cmon_slice() -> SliceBackend {
        SliceBackend::canonical(&BackendTag::CMon).unwrap()
    }

    #[test]
    fn canonical_cmon_anchor_is_the_two_element_group() {
        let s = cmon_slice();
        let c = s.anchor_object();
        assert_eq!(c.size, 2);
        match &c.structure {
            Structure::Monoid { table, .. } => assert_eq!(table, &vec![0, 1, 1, 0]),
            other => panic!("unexpected anchor structure {other:?}"),
        }
    }

    #[test]
    fn trivial_objects_are_those_with_trivial_carrier() {
        let s = cmon_slice();
        let ws = Workspace::new(Arc::new(cmon_slice()));
        let mut trivial = 0;
        for o in &ws.catalog.objects {
            let under = under_obj(o).unwrap();
            assert_eq!(
                s.is_trivial(o),
                s.base_backend().is_trivial(&under),
                "trivial-class membership must mirror the base"
            );
            if s.is_trivial(o) {
                trivial += 1;
            }
        }
        assert!(trivial >= 1, "the zero-anchored zero object is in the catalog");
    }

    #[test]
    fn identity_over_the_anchor_has_no_cokernel() {
        let s = cmon_slice();
        let c = s.anchor_object().clone();
        let x = s.obj(&c, (0..c.size).collect());
        let err = s.cokernel(&identity(&x)).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)), "{err}");
    }

    #[test]
    fn zero_anchored_identity_has_a_cokernel() {
        let s = cmon_slice();
        let c = s.anchor_object().clone();
        let x = s.obj(&c, vec![0; c.size]);
        let data = s.cokernel(&identity(&x)).unwrap();
        assert_eq!(data.q.cod.size, 1);
        assert!(s.is_trivial(&data.q.cod));
    }

    #[test]
    fn product_is_the_base_pullback_over_the_anchor() {
        let s = cmon_slice();
        let c = s.anchor_object().clone();
        let x = s.obj(&c, (0..c.size).collect());
        let prod = s.product(&x, &x).unwrap();
        // Pairs (a, b) with id(a) = id(b): the diagonal of Z₂.
        assert_eq!(prod.obj.size, 2);
        assert!(prod.left.map == vec![0, 1] && prod.right.map == vec![0, 1]);
        s.validate_morphism(&prod.left).unwrap();
        s.validate_morphism(&prod.right).unwrap();
    }

    #[test]
    fn anchored_homs_are_the_commuting_base_homs() {
        let s = cmon_slice();
        let c = s.anchor_object().clone();
        let id_anchored = s.obj(&c, (0..c.size).collect());
        let zero_anchored = s.obj(&c, vec![0; c.size]);
        // Base Hom(Z₂, Z₂) = {id, zero}; only the identity commutes with the
        // identity anchors, and only zero-to-zero commutes with zero anchors.
        let homs = s.enumerate_homs(&id_anchored, &id_anchored, 1_000).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].map, vec![0, 1]);
        let cross = s.enumerate_homs(&id_anchored, &zero_anchored, 1_000).unwrap();
        assert!(cross.is_empty(), "no map can lower the identity anchor to zero");
    }
}
