use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::core::backend::{identity, Backend};
use crate::core::error::{Error, Result};
use crate::core::obj::{Mor, Obj};

/// A finite, deterministic universe of objects and morphisms. Law suites
/// quantify over a catalog; verdicts are therefore bounded verification
/// relative to it, which reports state explicitly.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub objects: Vec<Arc<Obj>>,
    pub morphisms: Vec<Mor>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    pub notes: Vec<String>,
}

impl Catalog {
    /// Assemble a catalog from a deterministic object list, enumerating all
    /// morphisms between each ordered pair within `hom_budget` candidate
    /// assignments per pair. Pairs over budget keep identities only and are
    /// recorded in the notes.
    pub fn build(
        backend: &dyn Backend,
        mut objects: Vec<Arc<Obj>>,
        hom_budget: usize,
    ) -> Result<Catalog> {
        objects.sort();
        objects.dedup();
        for o in &objects {
            backend.validate_object(o)?;
        }
        let mut notes = Vec::new();
        let mut morphisms: Vec<Mor> = Vec::new();
        for x in &objects {
            for y in &objects {
                match backend.enumerate_homs(x, y, hom_budget) {
                    Some(homs) => morphisms.extend(homs),
                    None => {
                        notes.push(format!(
                            "hom set of sizes {} -> {} exceeded the enumeration budget; \
                             only identities kept for this pair",
                            x.size, y.size
                        ));
                        if x == y {
                            morphisms.push(identity(x));
                        }
                    }
                }
            }
        }
        for f in &morphisms {
            backend.validate_morphism(f)?;
        }
        Catalog::from_parts(objects, morphisms, notes)
    }

    /// Assemble from explicit parts (used by combinator backends that build
    /// their derived catalogs directly).
    pub fn from_parts(
        objects: Vec<Arc<Obj>>,
        mut morphisms: Vec<Mor>,
        notes: Vec<String>,
    ) -> Result<Catalog> {
        let index: BTreeMap<&Arc<Obj>, usize> =
            objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut keyed: Vec<((usize, usize, Vec<usize>), Mor)> = Vec::new();
        for f in morphisms.drain(..) {
            let di = *index
                .get(&f.dom)
                .ok_or_else(|| Error::InvalidInput("morphism domain not in catalog".into()))?;
            let ci = *index
                .get(&f.cod)
                .ok_or_else(|| Error::InvalidInput("morphism codomain not in catalog".into()))?;
            keyed.push(((di, ci, f.map.clone()), f));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let morphisms: Vec<Mor> = keyed
            .into_iter()
            .enumerate()
            .map(|(k, ((di, ci, _), f))| {
                homs.entry((di, ci)).or_default().push(k);
                f
            })
            .collect();
        Ok(Catalog {
            objects,
            morphisms,
            homs,
            notes,
        })
    }

    pub fn object_index(&self, o: &Obj) -> Option<usize> {
        self.objects.binary_search_by(|probe| (**probe).cmp(o)).ok()
    }

    /// Indices of morphisms `objects[i] → objects[j]`.
    pub fn hom(&self, i: usize, j: usize) -> &[usize] {
        self.homs.get(&(i, j)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn morphisms_from(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.homs
            .range((i, 0)..=(i, usize::MAX))
            .flat_map(|(_, v)| v.iter().copied())
    }

    pub fn morphisms_into(&self, j: usize) -> Vec<usize> {
        self.homs
            .iter()
            .filter(|((_, cj), _)| *cj == j)
            .flat_map(|(_, v)| v.iter().copied())
            .collect()
    }

    pub fn dom_index(&self, mor_idx: usize) -> usize {
        self.object_index(&self.morphisms[mor_idx].dom)
            .expect("catalog morphism endpoints are catalog objects")
    }

    pub fn cod_index(&self, mor_idx: usize) -> usize {
        self.object_index(&self.morphisms[mor_idx].cod)
            .expect("catalog morphism endpoints are catalog objects")
    }
}

/// Per-morphism classification, computed once per workspace by the engine
/// and shared by every law suite. `regular_epi` is `None` where the
/// backend's quotients cannot decide coequalizers.
#[derive(Clone, Copy, Debug, Default)]
pub struct MorTraits {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
    pub normal_epi: bool,
    pub normal_mono: bool,
    pub trivial_kernel: bool,
    pub regular_epi: Option<bool>,
}

/// A backend together with its catalog and a lazily filled classification
/// cache. All engine-level suites run against a workspace.
pub struct Workspace {
    pub backend: Arc<dyn Backend>,
    pub catalog: Catalog,
    pub(crate) traits_cache: OnceLock<Vec<MorTraits>>,
}

impl Workspace {
    pub fn new(backend: Arc<dyn Backend>) -> Self {
        let catalog = backend.catalog();
        Workspace {
            backend,
            catalog,
            traits_cache: OnceLock::new(),
        }
    }

    pub fn with_catalog(backend: Arc<dyn Backend>, catalog: Catalog) -> Self {
        Workspace {
            backend,
            catalog,
            traits_cache: OnceLock::new(),
        }
    }
}
