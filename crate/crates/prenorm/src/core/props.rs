use std::sync::Arc;

use crate::core::backend::{compose, identity, Backend};
use crate::core::catalog::Workspace;
use crate::core::error::{Error, Result};
use crate::core::obj::{Mor, Obj};

/// Isomorphism test: bijective on carriers with a structure-preserving
/// inverse.
pub fn is_iso(b: &dyn Backend, f: &Mor) -> bool {
    if !f.is_bijective() {
        return false;
    }
    let mut inv = vec![0; f.cod.size];
    for (x, &y) in f.map.iter().enumerate() {
        inv[y] = x;
    }
    let inverse = Mor::new(f.cod.clone(), f.dom.clone(), inv);
    b.validate_morphism(&inverse).is_ok()
}

/// Monomorphism test. In every backend here monos are exactly the injective
/// morphisms: the kernel pair `{(a, b) : f(a) = f(b)}` always exists as a
/// substructure of the product, and its two projections witness any
/// non-injective collapse. `is_mono_bounded` is the independent categorical
/// route used to cross-check this on catalogs.
pub fn is_mono(f: &Mor) -> bool {
    f.is_injective()
}

/// Cancellation test against the workspace catalog only: bounded
/// verification of the mono property.
pub fn is_mono_bounded(ws: &Workspace, f: &Mor) -> bool {
    let Some(di) = ws.catalog.object_index(&f.dom) else {
        return is_mono(f);
    };
    for t in 0..ws.catalog.objects.len() {
        let homs = ws.catalog.hom(t, di);
        for (i, &gi) in homs.iter().enumerate() {
            for &hi in &homs[i + 1..] {
                let g = &ws.catalog.morphisms[gi];
                let h = &ws.catalog.morphisms[hi];
                let fg = compose(g, f).expect("endpoints match");
                let fh = compose(h, f).expect("endpoints match");
                if fg.map == fh.map && g.map != h.map {
                    return false;
                }
            }
        }
    }
    true
}

/// Epimorphism test. Surjective maps are epic in every concrete backend.
/// For non-surjective maps the backends that certify "epi ⟺ surjective"
/// answer directly; the rest fall back to bounded cancellation against the
/// catalog, which is conservative (`false`) for objects outside it.
pub fn is_epi(ws: &Workspace, f: &Mor) -> bool {
    if f.is_surjective() {
        return true;
    }
    if ws.backend.epis_are_surjections() {
        return false;
    }
    let Some(ci) = ws.catalog.object_index(&f.cod) else {
        return false;
    };
    for t in 0..ws.catalog.objects.len() {
        let homs = ws.catalog.hom(ci, t);
        for (i, &gi) in homs.iter().enumerate() {
            for &hi in &homs[i + 1..] {
                let g = &ws.catalog.morphisms[gi];
                let h = &ws.catalog.morphisms[hi];
                if g.map == h.map {
                    continue;
                }
                let gf = compose(f, g).expect("endpoints match");
                let hf = compose(f, h).expect("endpoints match");
                if gf.map == hf.map {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `f` factors through a trivial object.
///
/// The generic route factors through the counit of the codomain's
/// coreflection, which is the universal trivial subobject: `f` is trivial
/// exactly when its image lies inside the counit's image and the induced
/// corestriction is a morphism. Backend shortcuts are cross-checked against
/// this route under debug assertions.
pub fn is_trivial_map(b: &dyn Backend, f: &Mor) -> bool {
    match b.trivial_map_char(f) {
        Some(v) => {
            debug_assert_eq!(
                v,
                trivial_via_counit(b, f),
                "backend trivial-map shortcut disagrees with counit factorisation"
            );
            v
        }
        None => trivial_via_counit(b, f),
    }
}

fn trivial_via_counit(b: &dyn Backend, f: &Mor) -> bool {
    factor_through_mono(b, f, &b.coreflection(&f.cod).counit).is_some()
}

/// Unique factorisation of `f` through a mono `m` with the same codomain,
/// when the image of `f` lies in the image of `m` and the corestriction is a
/// morphism.
pub fn factor_through_mono(b: &dyn Backend, f: &Mor, m: &Mor) -> Option<Mor> {
    if f.cod != m.cod {
        return None;
    }
    let mut pos = vec![usize::MAX; m.cod.size];
    for (i, &y) in m.map.iter().enumerate() {
        pos[y] = i;
    }
    let mut table = Vec::with_capacity(f.dom.size);
    for x in f.dom.carrier() {
        let p = pos[f.apply(x)];
        if p == usize::MAX {
            return None;
        }
        table.push(p);
    }
    let induced = Mor::new(f.dom.clone(), m.dom.clone(), table);
    b.validate_morphism(&induced).ok().map(|_| induced)
}

/// Reflection of `x` into the trivial class: the cokernel of the identity.
/// The unit is the quotient projection, hence epic; the result object is
/// asserted trivial.
pub fn reflection(b: &dyn Backend, x: &Arc<Obj>) -> Result<Mor> {
    let coker = b.cokernel(&identity(x))?;
    if !b.is_trivial(&coker.q.cod) {
        return Err(Error::BackendBug(
            "reflection target is not a trivial object".into(),
        ));
    }
    Ok(coker.q)
}

/// One object's reflection data plus the bounded universality evidence.
#[derive(Clone, Debug)]
pub struct ReflectionReport {
    pub unit: Mor,
    pub unit_is_epi: bool,
    pub factorisations_checked: usize,
}

/// Catalog-wide subreflectivity evidence. Only objects that admit some map
/// into a trivial object are required to have a reflection; in anchored
/// (slice-like) backends the rest legitimately have none and are counted in
/// `outside_domain`.
#[derive(Clone, Debug)]
pub struct SubreflectivityReport {
    pub reflections: Vec<ReflectionReport>,
    pub outside_domain: usize,
}

/// Verify on the workspace catalog that the trivial class is subreflective:
/// every object admitting a catalog map into a trivial object has a
/// reflection, and every such map factors through its unit.
pub fn subreflectivity_report(ws: &Workspace) -> Result<SubreflectivityReport> {
    let b = ws.backend.as_ref();
    let trivial_idx: Vec<usize> = (0..ws.catalog.objects.len())
        .filter(|&i| b.is_trivial(&ws.catalog.objects[i]))
        .collect();
    let mut reflections = Vec::new();
    let mut outside_domain = 0;
    for (xi, x) in ws.catalog.objects.iter().enumerate() {
        let admits_trivial_target = trivial_idx
            .iter()
            .any(|&ti| !ws.catalog.hom(xi, ti).is_empty());
        let unit = match reflection(b, x) {
            Ok(unit) => unit,
            Err(Error::Unsupported(_)) if !admits_trivial_target => {
                outside_domain += 1;
                continue;
            }
            Err(Error::Unsupported(reason)) => {
                return Err(Error::BackendBug(format!(
                    "object index {xi} maps into a trivial object but has no \
                     reflection: {reason}"
                )));
            }
            Err(e) => return Err(e),
        };
        let mut checked = 0;
        for &ti in &trivial_idx {
            for &gi in ws.catalog.hom(xi, ti) {
                let g = &ws.catalog.morphisms[gi];
                let h = factor_through_epi(b, g, &unit).ok_or_else(|| {
                    Error::BackendBug(format!(
                        "map into a trivial object does not factor through the unit \
                         (object index {xi}, morphism index {gi})"
                    ))
                })?;
                debug_assert_eq!(
                    compose(&unit, &h).expect("endpoints match").map,
                    g.map
                );
                checked += 1;
            }
        }
        reflections.push(ReflectionReport {
            unit_is_epi: unit.is_surjective(),
            unit,
            factorisations_checked: checked,
        });
    }
    Ok(SubreflectivityReport {
        reflections,
        outside_domain,
    })
}

/// Unique factorisation of `f` through a surjection `e` with the same
/// domain: the induced map on representatives, when well defined and a
/// morphism.
pub fn factor_through_epi(b: &dyn Backend, f: &Mor, e: &Mor) -> Option<Mor> {
    if f.dom != e.dom || !e.is_surjective() {
        return None;
    }
    let mut table = vec![usize::MAX; e.cod.size];
    for x in f.dom.carrier() {
        let q = e.apply(x);
        let v = f.apply(x);
        if table[q] == usize::MAX {
            table[q] = v;
        } else if table[q] != v {
            return None;
        }
    }
    let induced = Mor::new(e.cod.clone(), f.cod.clone(), table);
    b.validate_morphism(&induced).ok().map(|_| induced)
}
