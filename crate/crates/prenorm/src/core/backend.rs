use std::sync::Arc;

use crate::closure::{Congruence, CongruenceKind};
use crate::core::error::{Error, Result};
use crate::core::obj::{BackendTag, Mor, Obj};
use crate::core::Catalog;

/// Identity morphism on an object.
pub fn identity(o: &Arc<Obj>) -> Mor {
    Mor::new(o.clone(), o.clone(), o.carrier().collect())
}

/// Diagrammatic composition: `compose(f, g)` is "f then g", i.e. g ∘ f.
pub fn compose(f: &Mor, g: &Mor) -> Result<Mor> {
    if f.cod != g.dom {
        return Err(Error::Mismatch(format!(
            "compose: codomain of first (size {}) is not domain of second (size {})",
            f.cod.size, g.dom.size
        )));
    }
    let map = f.map.iter().map(|&x| g.map[x]).collect();
    Ok(Mor::new(f.dom.clone(), g.cod.clone(), map))
}

/// A coreflection into the trivial class: `counit: corefl(B) → B`, always a
/// monomorphism with trivial domain.
#[derive(Clone, Debug)]
pub struct Coreflection {
    pub counit: Mor,
}

impl Coreflection {
    pub fn obj(&self) -> &Arc<Obj> {
        &self.counit.dom
    }
}

/// Binary product with its two projections.
#[derive(Clone, Debug)]
pub struct ProductData {
    pub obj: Arc<Obj>,
    pub left: Mor,
    pub right: Mor,
}

/// Pullback of a cospan `f: A → C ← B : g`, with projections to both feet.
#[derive(Clone, Debug)]
pub struct PullbackData {
    pub obj: Arc<Obj>,
    pub to_left: Mor,
    pub to_right: Mor,
}

/// Quotient of an object by a congruence. Classes are indexed by minimal
/// representative, in ascending order of that representative.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub obj: Arc<Obj>,
    pub projection: Mor,
    pub class_of: Vec<usize>,
}

/// A cokernel `q: B → Q` together with the congruence that produced it.
#[derive(Clone, Debug)]
pub struct CokernelData {
    pub q: Mor,
    pub congruence: Congruence,
}

/// The contract a concrete finite category implements.
///
/// A backend fixes a class of objects and morphisms, a mono-coreflective
/// class of trivial objects, finite limits (products and closed
/// substructures, hence pullbacks), quotients by congruences, and cokernels
/// relative to the trivial class. Everything else — kernels, factorisations,
/// the law suites — is generic engine code on top of this interface.
pub trait Backend: Send + Sync {
    fn tag(&self) -> BackendTag;

    fn validate_object(&self, x: &Obj) -> Result<()>;
    fn validate_morphism(&self, f: &Mor) -> Result<()>;

    /// Membership in the trivial-object class.
    fn is_trivial(&self, x: &Obj) -> bool;

    /// The coreflection of `b` into the trivial class.
    fn coreflection(&self, b: &Arc<Obj>) -> Coreflection;

    /// Backend-specific shortcut for "f factors through a trivial object".
    /// `None` means "use the generic counit-factorisation test".
    fn trivial_map_char(&self, _f: &Mor) -> Option<bool> {
        None
    }

    fn product(&self, a: &Arc<Obj>, b: &Arc<Obj>) -> Result<ProductData>;

    /// Induced structure on a subset of the carrier, as an inclusion
    /// morphism. Errors if the subset is not closed under the structure.
    fn substructure(&self, x: &Arc<Obj>, subset: &[usize]) -> Result<Mor>;

    /// Pullback of a cospan, by default carved out of the product.
    fn pullback(&self, f: &Mor, g: &Mor) -> Result<PullbackData> {
        if f.cod != g.cod {
            return Err(Error::Mismatch("pullback: cospan feet disagree".into()));
        }
        let prod = self.product(&f.dom, &g.dom)?;
        let subset: Vec<usize> = prod
            .obj
            .carrier()
            .filter(|&e| f.apply(prod.left.apply(e)) == g.apply(prod.right.apply(e)))
            .collect();
        let incl = self.substructure(&prod.obj, &subset)?;
        let to_left = compose(&incl, &prod.left)?;
        let to_right = compose(&incl, &prod.right)?;
        Ok(PullbackData {
            obj: to_left.dom.clone(),
            to_left,
            to_right,
        })
    }

    fn congruence_kind(&self) -> CongruenceKind;

    /// Smallest congruence of this backend's kind containing the seed pairs.
    fn smallest_congruence(&self, x: &Obj, seed: &[(usize, usize)]) -> Congruence;

    /// Quotient by a congruence of this backend's kind.
    fn quotient(&self, x: &Arc<Obj>, c: &Congruence) -> Result<QuotientData>;

    /// Cokernel of `f` relative to the trivial class: the universal quotient
    /// of the codomain making the composite trivial.
    fn cokernel(&self, f: &Mor) -> Result<CokernelData>;

    /// Backend-specific closed-form kernel (an inclusion into `dom f`), used
    /// to cross-check the generic pullback construction. `None` if the
    /// backend has no independent formula.
    fn kernel_direct(&self, _f: &Mor) -> Option<Mor> {
        None
    }

    /// Whether "epimorphism ⟺ surjective map" is certified for this backend,
    /// enabling the fast path in `is_epi`.
    fn epis_are_surjections(&self) -> bool {
        false
    }

    /// Independent characterisation of normal epimorphisms, where the
    /// backend has one. Cross-validated against the engine's factorisation
    /// route over whole catalogs.
    fn normal_epi_char(&self, _f: &Mor) -> Option<bool> {
        None
    }

    /// All morphisms `x → y`, or `None` if the search space exceeds
    /// `budget` candidate assignments.
    fn enumerate_homs(&self, x: &Arc<Obj>, y: &Arc<Obj>, budget: usize) -> Option<Vec<Mor>>;

    /// The bundled finite catalog law suites quantify over.
    fn catalog(&self) -> Catalog;
}
