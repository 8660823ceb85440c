//! Diagram categories: functors from a finite chain shape `0 → 1 → ⋯ → n−1`
//! into a base category, with natural transformations as morphisms.
//!
//! A diagram is stored as one object per chain position plus the generating
//! arrow between each consecutive pair; the flat carrier is the disjoint
//! union of the component carriers. Everything pointwise-computable stays
//! pointwise: the trivial diagrams are the componentwise trivial ones, and
//! coreflections, products, congruences, quotients, cokernels, and kernels
//! are assembled from the base operation at each position together with the
//! induced maps between consecutive positions. A diagram map is a normal epi
//! (or trivial) exactly when every component is, so evaluating at a position
//! preserves the whole calculus; [`evaluation_preservation_report`] checks
//! that on a derived catalog.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::backends::{workspace_for, HOM_BUDGET};
use crate::closure::{Congruence, CongruenceKind};
use crate::core::{
    compose, factor_through_mono, is_trivial_map, Backend, BackendTag, Catalog, CokernelData,
    Coreflection, Error, Mor, Obj, ProductData, QuotientData, Result, Structure, Workspace,
};
use crate::engine::ops;

/// Cap on the summed carrier size of a derived diagram object.
const MAX_DIAGRAM_TOTAL_SIZE: usize = 6;

/// Cap on the number of derived diagram objects; the remainder is dropped
/// deterministically (catalog order) and recorded in the notes.
const MAX_DIAGRAM_OBJECTS: usize = 32;

/// The shape of a diagram: a finite chain `0 → 1 → ⋯ → len−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    len: usize,
}

impl Shape {
    /// The one-position shape; diagrams over it are plain base objects.
    pub fn point() -> Shape {
        Shape { len: 1 }
    }

    /// The two-position shape `0 → 1`; diagrams over it are base morphisms.
    pub fn arrow() -> Shape {
        Shape { len: 2 }
    }

    /// A chain with `len ≥ 1` positions and `len − 1` generating arrows.
    pub fn chain(len: usize) -> Result<Shape> {
        if len == 0 {
            return Err(Error::InvalidInput(
                "a diagram shape needs at least one position".into(),
            ));
        }
        Ok(Shape { len })
    }

    /// Number of positions in the chain.
    pub fn positions(&self) -> usize {
        self.len
    }
}

/// Functors from a chain shape into a base category.
pub struct DiagramBackend {
    base: Arc<Workspace>,
    shape: Shape,
}

impl DiagramBackend {
    /// Diagrams of the given shape over the named base backend.
    pub fn new(base_tag: &BackendTag, shape: Shape) -> Result<DiagramBackend> {
        Ok(DiagramBackend {
            base: workspace_for(base_tag)?,
            shape,
        })
    }

    /// The canonical diagram category over a base: the arrow category
    /// (shape `0 → 1`), whose objects are the base morphisms.
    pub fn canonical(base_tag: &BackendTag) -> Result<DiagramBackend> {
        DiagramBackend::new(base_tag, Shape::arrow())
    }

    /// The chain shape this backend is built over.
    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Assemble a diagram object from one base object per position and the
    /// generating arrows between consecutive positions.
    pub fn obj(&self, components: Vec<Obj>, arrows: Vec<Vec<usize>>) -> Arc<Obj> {
        let size = components.iter().map(|c| c.size).sum();
        Arc::new(Obj {
            backend: self.tag(),
            size,
            structure: Structure::Diagram { components, arrows },
        })
    }

    fn base_backend(&self) -> &dyn Backend {
        self.base.backend.as_ref()
    }
}

fn parts(x: &Obj) -> Result<(&[Obj], &[Vec<usize>])> {
    match &x.structure {
        Structure::Diagram { components, arrows } => Ok((components, arrows)),
        _ => Err(Error::InvalidObject(
            "expected a diagram-structured object".into(),
        )),
    }
}

fn offsets(x: &Obj) -> Result<Vec<usize>> {
    x.diagram_offsets()
        .ok_or_else(|| Error::InvalidObject("expected a diagram-structured object".into()))
}

/// The position a flat carrier element belongs to, given the offset table.
fn block_of(offs: &[usize], v: usize) -> usize {
    offs.partition_point(|&o| o <= v) - 1
}

/// The base object at position `k` of a diagram.
pub fn component_obj(x: &Obj, k: usize) -> Result<Arc<Obj>> {
    let (comps, _) = parts(x)?;
    comps.get(k).map(|c| Arc::new(c.clone())).ok_or_else(|| {
        Error::InvalidInput(format!(
            "diagram has {} positions, none at {k}",
            comps.len()
        ))
    })
}

/// The generating arrow `X_k → X_{k+1}` of a diagram, as a base morphism.
pub fn connecting_mor(x: &Obj, k: usize) -> Result<Mor> {
    let (comps, arrows) = parts(x)?;
    let arr = arrows.get(k).ok_or_else(|| {
        Error::InvalidInput(format!("diagram has {} arrows, none at {k}", arrows.len()))
    })?;
    Ok(Mor::new(
        Arc::new(comps[k].clone()),
        Arc::new(comps[k + 1].clone()),
        arr.clone(),
    ))
}

/// The component of a diagram morphism at position `k`, as a base morphism.
pub fn component_mor(f: &Mor, k: usize) -> Result<Mor> {
    let dom = component_obj(&f.dom, k)?;
    let cod = component_obj(&f.cod, k)?;
    let dom_offs = offsets(&f.dom)?;
    let cod_offs = offsets(&f.cod)?;
    let (lo, hi) = (cod_offs[k], cod_offs[k + 1]);
    let mut map = Vec::with_capacity(dom.size);
    for i in 0..dom.size {
        let v = f.map[dom_offs[k] + i];
        if v < lo || v >= hi {
            return Err(Error::InvalidMorphism(format!(
                "element {i} of position {k} maps outside its block"
            )));
        }
        map.push(v - lo);
    }
    Ok(Mor::new(dom, cod, map))
}

impl Backend for DiagramBackend {
    fn tag(&self) -> BackendTag {
        BackendTag::Diagram(Box::new(self.base.backend.tag()))
    }

    fn validate_object(&self, x: &Obj) -> Result<()> {
        let (comps, arrows) = parts(x)?;
        if comps.len() != self.shape.positions() {
            return Err(Error::InvalidObject(format!(
                "diagram has {} components for a {}-position shape",
                comps.len(),
                self.shape.positions()
            )));
        }
        if arrows.len() + 1 != comps.len() {
            return Err(Error::InvalidObject(format!(
                "{} components need {} connecting arrows, found {}",
                comps.len(),
                comps.len() - 1,
                arrows.len()
            )));
        }
        if x.size != comps.iter().map(|c| c.size).sum::<usize>() {
            return Err(Error::InvalidObject(
                "diagram carrier size disagrees with the component sizes".into(),
            ));
        }
        for c in comps {
            self.base_backend().validate_object(c)?;
        }
        for (k, arr) in arrows.iter().enumerate() {
            if arr.len() != comps[k].size || arr.iter().any(|&v| v >= comps[k + 1].size) {
                return Err(Error::InvalidObject(format!(
                    "connecting arrow {k} is not a map between its components"
                )));
            }
            self.base_backend().validate_morphism(&connecting_mor(x, k)?)?;
        }
        Ok(())
    }

    fn validate_morphism(&self, f: &Mor) -> Result<()> {
        self.validate_object(&f.dom)?;
        self.validate_object(&f.cod)?;
        let (dc, da) = parts(&f.dom)?;
        let (_, ca) = parts(&f.cod)?;
        if f.map.len() != f.dom.size {
            return Err(Error::InvalidMorphism(
                "map length disagrees with the domain carrier".into(),
            ));
        }
        let mut comps = Vec::with_capacity(dc.len());
        for k in 0..dc.len() {
            let ck = component_mor(f, k)?;
            self.base_backend().validate_morphism(&ck)?;
            comps.push(ck);
        }
        for k in 0..dc.len() - 1 {
            for i in 0..dc[k].size {
                if comps[k + 1].map[da[k][i]] != ca[k][comps[k].map[i]] {
                    return Err(Error::InvalidMorphism(format!(
                        "naturality fails at element {i} of position {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn is_trivial(&self, x: &Obj) -> bool {
        match parts(x) {
            Ok((comps, _)) => comps.iter().all(|c| self.base_backend().is_trivial(c)),
            Err(_) => false,
        }
    }

    /// Componentwise coreflection. The connecting arrows of the trivial
    /// diagram are the factorisations of `counit_k ; arrow_k` through
    /// `counit_{k+1}`, which exist because a map out of a trivial object
    /// lands in the trivial part of its codomain.
    fn coreflection(&self, b: &Arc<Obj>) -> Coreflection {
        let (comps, _) = parts(b).expect("coreflection of a non-diagram object");
        let boffs = b.diagram_offsets().expect("diagram offsets");
        let counits: Vec<Mor> = comps
            .iter()
            .map(|c| self.base_backend().coreflection(&Arc::new(c.clone())).counit)
            .collect();
        let mut zarrows = Vec::with_capacity(counits.len() - 1);
        for k in 0..counits.len() - 1 {
            let beta = connecting_mor(b, k).expect("connecting arrow");
            let through = compose(&counits[k], &beta).expect("counit composes with the arrow");
            let lifted = factor_through_mono(self.base_backend(), &through, &counits[k + 1])
                .expect("a map out of a trivial object factors through the coreflection");
            zarrows.push(lifted.map);
        }
        let zcomps: Vec<Obj> = counits.iter().map(|u| (*u.dom).clone()).collect();
        let zobj = self.obj(zcomps, zarrows);
        let mut flat = Vec::with_capacity(zobj.size);
        for (k, u) in counits.iter().enumerate() {
            flat.extend(u.map.iter().map(|&y| boffs[k] + y));
        }
        Coreflection {
            counit: Mor::new(zobj, b.clone(), flat),
        }
    }

    fn trivial_map_char(&self, f: &Mor) -> Option<bool> {
        let n = parts(&f.dom).ok()?.0.len();
        let mut unknown = false;
        for k in 0..n {
            let ck = component_mor(f, k).ok()?;
            match self.base_backend().trivial_map_char(&ck) {
                Some(false) => return Some(false),
                Some(true) => {}
                None => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(true)
        }
    }

    /// Componentwise product; the connecting arrow of the product diagram is
    /// the pairing of `left_k ; arrow` and `right_k ; arrow`, located through
    /// the projections of the next component product.
    fn product(&self, a: &Arc<Obj>, b: &Arc<Obj>) -> Result<ProductData> {
        let (ac, aa) = parts(a)?;
        let (bc, ba) = parts(b)?;
        if ac.len() != bc.len() {
            return Err(Error::Mismatch("diagram shapes disagree".into()));
        }
        let mut blocks = Vec::with_capacity(ac.len());
        for k in 0..ac.len() {
            blocks.push(
                self.base_backend()
                    .product(&Arc::new(ac[k].clone()), &Arc::new(bc[k].clone()))?,
            );
        }
        let mut parrows = Vec::with_capacity(blocks.len() - 1);
        for k in 0..blocks.len() - 1 {
            let mut pos = BTreeMap::new();
            for e in blocks[k + 1].obj.carrier() {
                pos.insert(
                    (blocks[k + 1].left.map[e], blocks[k + 1].right.map[e]),
                    e,
                );
            }
            let mut arr = Vec::with_capacity(blocks[k].obj.size);
            for e in blocks[k].obj.carrier() {
                let target = (
                    aa[k][blocks[k].left.map[e]],
                    ba[k][blocks[k].right.map[e]],
                );
                let idx = pos.get(&target).copied().ok_or_else(|| {
                    Error::BackendBug(format!(
                        "component product at position {} has no element projecting to {target:?}",
                        k + 1
                    ))
                })?;
                arr.push(idx);
            }
            parrows.push(arr);
        }
        let comps: Vec<Obj> = blocks.iter().map(|p| (*p.obj).clone()).collect();
        let obj = self.obj(comps, parrows);
        let aoffs = a.diagram_offsets().expect("diagram offsets");
        let boffs = b.diagram_offsets().expect("diagram offsets");
        let mut left = Vec::with_capacity(obj.size);
        let mut right = Vec::with_capacity(obj.size);
        for (k, p) in blocks.iter().enumerate() {
            for e in p.obj.carrier() {
                left.push(aoffs[k] + p.left.map[e]);
                right.push(boffs[k] + p.right.map[e]);
            }
        }
        Ok(ProductData {
            left: Mor::new(obj.clone(), a.clone(), left),
            right: Mor::new(obj.clone(), b.clone(), right),
            obj,
        })
    }

    fn substructure(&self, x: &Arc<Obj>, subset: &[usize]) -> Result<Mor> {
        let (comps, arrows) = parts(x)?;
        let offs = offsets(x)?;
        let chosen: BTreeSet<usize> = subset.iter().copied().collect();
        let mut locals: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
        for &v in &chosen {
            if v >= x.size {
                return Err(Error::InvalidInput(format!(
                    "element {v} lies outside the carrier"
                )));
            }
            let k = block_of(&offs, v);
            locals[k].push(v - offs[k]);
        }
        for k in 0..comps.len() - 1 {
            for &i in &locals[k] {
                if !chosen.contains(&(offs[k + 1] + arrows[k][i])) {
                    return Err(Error::Unsupported(format!(
                        "subset is not closed under the connecting arrow at position {k}"
                    )));
                }
            }
        }
        let mut incls = Vec::with_capacity(comps.len());
        for (k, c) in comps.iter().enumerate() {
            incls.push(
                self.base_backend()
                    .substructure(&Arc::new(c.clone()), &locals[k])?,
            );
        }
        let mut sarrows = Vec::with_capacity(comps.len() - 1);
        for k in 0..comps.len() - 1 {
            let mut pos = vec![usize::MAX; comps[k + 1].size];
            for (j, &v) in incls[k + 1].map.iter().enumerate() {
                pos[v] = j;
            }
            let mut arr = Vec::with_capacity(incls[k].dom.size);
            for i in 0..incls[k].dom.size {
                let j = pos[arrows[k][incls[k].map[i]]];
                debug_assert_ne!(j, usize::MAX, "closure under arrows was checked above");
                arr.push(j);
            }
            sarrows.push(arr);
        }
        let scomps: Vec<Obj> = incls.iter().map(|m| (*m.dom).clone()).collect();
        let sobj = self.obj(scomps, sarrows);
        let mut flat = Vec::with_capacity(sobj.size);
        for (k, m) in incls.iter().enumerate() {
            flat.extend(m.map.iter().map(|&v| offs[k] + v));
        }
        Ok(Mor::new(sobj, x.clone(), flat))
    }

    fn congruence_kind(&self) -> CongruenceKind {
        self.base_backend().congruence_kind()
    }

    /// Congruences are generated per position, pushing the closed pairs of
    /// each block forward through its connecting arrow into the seed of the
    /// next block. One left-to-right sweep is exact because every shape
    /// arrow points forward.
    fn smallest_congruence(&self, x: &Obj, seed: &[(usize, usize)]) -> Congruence {
        let (comps, arrows) = parts(x).expect("congruence on a non-diagram object");
        let offs = x.diagram_offsets().expect("diagram offsets");
        let mut block_seeds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); comps.len()];
        for &(a, b) in seed {
            let (ka, kb) = (block_of(&offs, a), block_of(&offs, b));
            assert_eq!(
                ka, kb,
                "congruence seed pair ({a}, {b}) spans diagram positions"
            );
            block_seeds[ka].push((a - offs[ka], b - offs[ka]));
        }
        let mut pairs = BTreeSet::new();
        for k in 0..comps.len() {
            let cong = self
                .base_backend()
                .smallest_congruence(&comps[k], &block_seeds[k]);
            if k + 1 < comps.len() {
                for &(a, b) in &cong.pairs {
                    block_seeds[k + 1].push((arrows[k][a], arrows[k][b]));
                }
            }
            for &(a, b) in &cong.pairs {
                pairs.insert((offs[k] + a, offs[k] + b));
            }
        }
        Congruence {
            kind: self.base_backend().congruence_kind(),
            carrier_size: x.size,
            pairs,
        }
    }

    fn quotient(&self, x: &Arc<Obj>, c: &Congruence) -> Result<QuotientData> {
        let (comps, arrows) = parts(x)?;
        let offs = offsets(x)?;
        let mut block_pairs: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); comps.len()];
        for &(a, b) in &c.pairs {
            let (ka, kb) = (block_of(&offs, a), block_of(&offs, b));
            if ka != kb {
                return Err(Error::InvalidInput(format!(
                    "congruence pair ({a}, {b}) spans diagram positions"
                )));
            }
            block_pairs[ka].insert((a - offs[ka], b - offs[ka]));
        }
        let mut quots = Vec::with_capacity(comps.len());
        for (k, comp) in comps.iter().enumerate() {
            let cong = Congruence {
                kind: c.kind,
                carrier_size: comp.size,
                pairs: block_pairs[k].clone(),
            };
            quots.push(
                self.base_backend()
                    .quotient(&Arc::new(comp.clone()), &cong)?,
            );
        }
        let mut qarrows = Vec::with_capacity(comps.len() - 1);
        for k in 0..comps.len() - 1 {
            let mut arr = vec![usize::MAX; quots[k].obj.size];
            for e in 0..comps[k].size {
                let cls = quots[k].projection.map[e];
                let img = quots[k + 1].projection.map[arrows[k][e]];
                if arr[cls] == usize::MAX {
                    arr[cls] = img;
                } else if arr[cls] != img {
                    return Err(Error::Unsupported(format!(
                        "congruence is not compatible with the connecting arrow at position {k}"
                    )));
                }
            }
            if arr.contains(&usize::MAX) {
                return Err(Error::BackendBug(
                    "quotient projection is not surjective".into(),
                ));
            }
            qarrows.push(arr);
        }
        let qcomps: Vec<Obj> = quots.iter().map(|q| (*q.obj).clone()).collect();
        let qobj = self.obj(qcomps, qarrows);
        let qoffs = qobj.diagram_offsets().expect("diagram offsets");
        let mut flat = Vec::with_capacity(x.size);
        for (k, q) in quots.iter().enumerate() {
            flat.extend(q.projection.map.iter().map(|&cls| qoffs[k] + cls));
        }
        Ok(QuotientData {
            projection: Mor::new(x.clone(), qobj.clone(), flat.clone()),
            obj: qobj,
            class_of: flat,
        })
    }

    /// Componentwise cokernel. The induced arrow between consecutive
    /// cokernels exists because `q_{k+1} ∘ arrow ∘ f_k = q_{k+1} ∘ f_{k+1} ∘
    /// arrow` is trivial, so `q_{k+1} ∘ arrow` factors through the cokernel
    /// `q_k`; an inconsistent descent would mean a base cokernel is not one.
    fn cokernel(&self, f: &Mor) -> Result<CokernelData> {
        let (ycomps, yarrows) = parts(&f.cod)?;
        let yoffs = offsets(&f.cod)?;
        let n = ycomps.len();
        let mut blocks = Vec::with_capacity(n);
        for k in 0..n {
            blocks.push(self.base_backend().cokernel(&component_mor(f, k)?)?);
        }
        let mut qarrows = Vec::with_capacity(n - 1);
        for k in 0..n - 1 {
            let mut arr = vec![usize::MAX; blocks[k].q.cod.size];
            for y in 0..ycomps[k].size {
                let cls = blocks[k].q.map[y];
                let img = blocks[k + 1].q.map[yarrows[k][y]];
                if arr[cls] == usize::MAX {
                    arr[cls] = img;
                } else if arr[cls] != img {
                    return Err(Error::BackendBug(format!(
                        "component cokernels do not glue along the arrow at position {k}"
                    )));
                }
            }
            if arr.contains(&usize::MAX) {
                return Err(Error::BackendBug(
                    "cokernel projection is not surjective".into(),
                ));
            }
            qarrows.push(arr);
        }
        let qcomps: Vec<Obj> = blocks.iter().map(|b| (*b.q.cod).clone()).collect();
        let qobj = self.obj(qcomps, qarrows);
        let qoffs = qobj.diagram_offsets().expect("diagram offsets");
        let mut flat = Vec::with_capacity(f.cod.size);
        let mut pairs = BTreeSet::new();
        for (k, blk) in blocks.iter().enumerate() {
            flat.extend(blk.q.map.iter().map(|&cls| qoffs[k] + cls));
            for &(a, b) in &blk.congruence.pairs {
                pairs.insert((yoffs[k] + a, yoffs[k] + b));
            }
        }
        Ok(CokernelData {
            q: Mor::new(f.cod.clone(), qobj, flat),
            congruence: Congruence {
                kind: blocks[0].congruence.kind,
                carrier_size: f.cod.size,
                pairs,
            },
        })
    }

    fn kernel_direct(&self, f: &Mor) -> Option<Mor> {
        let (xcomps, xarrows) = parts(&f.dom).ok()?;
        let xoffs = f.dom.diagram_offsets()?;
        let n = xcomps.len();
        let mut incls = Vec::with_capacity(n);
        for k in 0..n {
            incls.push(
                self.base_backend()
                    .kernel_direct(&component_mor(f, k).ok()?)?,
            );
        }
        let mut karrows = Vec::with_capacity(n - 1);
        for k in 0..n - 1 {
            let mut pos = vec![usize::MAX; xcomps[k + 1].size];
            for (j, &v) in incls[k + 1].map.iter().enumerate() {
                pos[v] = j;
            }
            let mut arr = Vec::with_capacity(incls[k].dom.size);
            for i in 0..incls[k].dom.size {
                let j = pos[xarrows[k][incls[k].map[i]]];
                if j == usize::MAX {
                    // The arrow restricts to the kernels; if the base kernel
                    // presentation defeats the lookup, let the generic
                    // construction take over.
                    return None;
                }
                arr.push(j);
            }
            karrows.push(arr);
        }
        let kcomps: Vec<Obj> = incls.iter().map(|m| (*m.dom).clone()).collect();
        let kobj = self.obj(kcomps, karrows);
        let mut flat = Vec::with_capacity(kobj.size);
        for (k, m) in incls.iter().enumerate() {
            flat.extend(m.map.iter().map(|&v| xoffs[k] + v));
        }
        Some(Mor::new(kobj, f.dom.clone(), flat))
    }

    /// Evaluation at each chain position has a right adjoint — repeat the
    /// base object at every earlier position and put the terminal trivial
    /// object afterwards — so diagram epis are componentwise epis. With
    /// surjective base epis they are exactly the surjections.
    fn epis_are_surjections(&self) -> bool {
        self.base_backend().epis_are_surjections()
    }

    /// Kernels, cokernels, and isos of diagrams are all componentwise, so a
    /// diagram map is a normal epi exactly when each component is.
    fn normal_epi_char(&self, f: &Mor) -> Option<bool> {
        let n = parts(&f.dom).ok()?.0.len();
        let mut unknown = false;
        for k in 0..n {
            let ck = component_mor(f, k).ok()?;
            match self.base_backend().normal_epi_char(&ck) {
                Some(false) => return Some(false),
                Some(true) => {}
                None => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(true)
        }
    }

    fn enumerate_homs(&self, x: &Arc<Obj>, y: &Arc<Obj>, budget: usize) -> Option<Vec<Mor>> {
        let (xc, xa) = parts(x).ok()?;
        let (yc, ya) = parts(y).ok()?;
        if xc.len() != yc.len() {
            return Some(Vec::new());
        }
        let n = xc.len();
        let mut block_homs: Vec<Vec<Mor>> = Vec::with_capacity(n);
        let mut combos: usize = 1;
        for k in 0..n {
            let homs = self.base_backend().enumerate_homs(
                &Arc::new(xc[k].clone()),
                &Arc::new(yc[k].clone()),
                budget,
            )?;
            if homs.is_empty() {
                return Some(Vec::new());
            }
            combos = combos.saturating_mul(homs.len());
            if combos > budget {
                return None;
            }
            block_homs.push(homs);
        }
        let yoffs = y.diagram_offsets()?;
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let natural = (0..n - 1).all(|k| {
                let fk = &block_homs[k][idx[k]];
                let fk1 = &block_homs[k + 1][idx[k + 1]];
                (0..xc[k].size).all(|i| fk1.map[xa[k][i]] == ya[k][fk.map[i]])
            });
            if natural {
                let mut map = Vec::with_capacity(x.size);
                for k in 0..n {
                    map.extend(block_homs[k][idx[k]].map.iter().map(|&v| yoffs[k] + v));
                }
                out.push(Mor::new(x.clone(), y.clone(), map));
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Some(out);
                }
                idx[k] += 1;
                if idx[k] < block_homs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn catalog(&self) -> Catalog {
        let mut notes = Vec::new();
        let mut partial: Vec<(Vec<Obj>, Vec<Vec<usize>>)> = self
            .base
            .catalog
            .objects
            .iter()
            .filter(|o| o.size <= MAX_DIAGRAM_TOTAL_SIZE)
            .map(|o| (vec![(**o).clone()], Vec::new()))
            .collect();
        for _ in 1..self.shape.positions() {
            let mut next = Vec::new();
            for (comps, arrows) in &partial {
                let used: usize = comps.iter().map(|c| c.size).sum();
                let last = Arc::new(comps.last().expect("chain is nonempty").clone());
                for o in &self.base.catalog.objects {
                    if used + o.size > MAX_DIAGRAM_TOTAL_SIZE {
                        continue;
                    }
                    let Some(homs) = self.base_backend().enumerate_homs(&last, o, HOM_BUDGET)
                    else {
                        continue;
                    };
                    for h in homs {
                        let mut comps2 = comps.clone();
                        comps2.push((**o).clone());
                        let mut arrows2 = arrows.clone();
                        arrows2.push(h.map);
                        next.push((comps2, arrows2));
                    }
                }
            }
            partial = next;
        }
        let mut objects: Vec<Arc<Obj>> = partial
            .into_iter()
            .map(|(comps, arrows)| self.obj(comps, arrows))
            .collect();
        objects.sort();
        objects.dedup();
        if objects.len() > MAX_DIAGRAM_OBJECTS {
            notes.push(format!(
                "derived diagram catalog capped at {MAX_DIAGRAM_OBJECTS} of {} diagrams",
                objects.len()
            ));
            objects.truncate(MAX_DIAGRAM_OBJECTS);
        }
        let mut catalog = Catalog::build(self, objects, HOM_BUDGET)
            .expect("derived diagram catalog is well-formed");
        catalog.notes.extend(notes);
        catalog
    }
}

/// Tally of the componentwise checks behind [`evaluation_preservation_report`].
#[derive(Clone, Debug)]
pub struct EvaluationReport {
    /// Positions of the chain shape.
    pub positions: usize,
    /// Diagram objects examined.
    pub objects: usize,
    /// Diagram morphisms examined.
    pub morphisms: usize,
    /// Kernel comparisons performed (one per morphism position).
    pub kernels: usize,
    /// Exact pairs whose components were re-checked in the base.
    pub exact_pairs: usize,
    /// Human-readable descriptions of every disagreement found.
    pub failures: Vec<String>,
}

/// Check, over a derived diagram catalog, that evaluating at each chain
/// position sends the diagram-level notions — trivial objects, coreflections,
/// kernels, normal epis, trivial maps, exact pairs — to the base notions.
pub fn evaluation_preservation_report(ws: &Workspace) -> Result<EvaluationReport> {
    let BackendTag::Diagram(inner) = ws.backend.tag() else {
        return Err(Error::InvalidInput("expected a diagram workspace".into()));
    };
    let base_ws = workspace_for(&inner)?;
    let b = ws.backend.as_ref();
    let bb = base_ws.backend.as_ref();
    let mut rep = EvaluationReport {
        positions: 0,
        objects: 0,
        morphisms: 0,
        kernels: 0,
        exact_pairs: 0,
        failures: Vec::new(),
    };
    for x in &ws.catalog.objects {
        let (comps, _) = parts(x)?;
        rep.positions = comps.len();
        rep.objects += 1;
        let pointwise = comps.iter().all(|c| bb.is_trivial(c));
        if b.is_trivial(x) != pointwise {
            rep.failures.push(format!(
                "trivial-class mismatch on a {}-element diagram",
                x.size
            ));
        }
        let counit = b.coreflection(x).counit;
        for k in 0..comps.len() {
            let ck = component_mor(&counit, k)?;
            let base_counit = bb.coreflection(&Arc::new(comps[k].clone())).counit;
            if !ops::same_subobject(bb, &ck, &base_counit) {
                rep.failures.push(format!(
                    "coreflection at position {k} is not the base coreflection"
                ));
            }
        }
    }
    for f in &ws.catalog.morphisms {
        rep.morphisms += 1;
        let n = parts(&f.dom)?.0.len();
        let kd = ops::kernel(b, f)?;
        let mut ne_parts = true;
        let mut tm_parts = true;
        for k in 0..n {
            let fk = component_mor(f, k)?;
            let base_k = ops::kernel(bb, &fk)?;
            rep.kernels += 1;
            if !ops::same_subobject(bb, &component_mor(&kd, k)?, &base_k) {
                rep.failures.push(format!(
                    "kernel at position {k} disagrees with the base kernel"
                ));
            }
            ne_parts &= ops::is_normal_epi(bb, &fk)?;
            tm_parts &= is_trivial_map(bb, &fk);
        }
        if ops::is_normal_epi(b, f)? != ne_parts {
            rep.failures
                .push("normal-epi verdict is not componentwise".into());
        }
        if is_trivial_map(b, f) != tm_parts {
            rep.failures
                .push("trivial-map verdict is not componentwise".into());
        }
    }
    for seq in ops::catalog_exact_sequences(ws)? {
        rep.exact_pairs += 1;
        let n = parts(&seq.f.dom)?.0.len();
        for k in 0..n {
            let fk = component_mor(&seq.f, k)?;
            let gk = component_mor(&seq.g, k)?;
            if !ops::check_exact_sequence(bb, &fk, &gk)? {
                rep.failures.push(format!(
                    "exact pair loses exactness at position {k}"
                ));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::monoid::cyclic_table;
    use crate::backends::pointed::MonoidBackend;
    use crate::core::identity;

    fn diag() -> DiagramBackend {
        DiagramBackend::canonical(&BackendTag::CMon).unwrap()
    }

    fn z2() -> Obj {
        let b = MonoidBackend::for_tag(BackendTag::CMon).unwrap();
        (*b.unordered_obj(2, cyclic_table(2))).clone()
    }

    fn one() -> Obj {
        let b = MonoidBackend::for_tag(BackendTag::CMon).unwrap();
        (*b.unordered_obj(1, cyclic_table(1))).clone()
    }

    /// The identity arrow on the two-element group, as a diagram.
    fn z2_id_diagram(d: &DiagramBackend) -> Arc<Obj> {
        d.obj(vec![z2(), z2()], vec![vec![0, 1]])
    }

    #[test]
    fn point_shape_reproduces_the_base_catalog() {
        let d = DiagramBackend::new(&BackendTag::CMon, Shape::point()).unwrap();
        let ws = Workspace::new(Arc::new(DiagramBackend::new(
            &BackendTag::CMon,
            Shape::point(),
        )
        .unwrap()));
        assert!(!ws.catalog.objects.is_empty());
        let base = workspace_for(&BackendTag::CMon).unwrap();
        for o in &ws.catalog.objects {
            let c = component_obj(o, 0).unwrap();
            assert_eq!(o.size, c.size);
            assert!(
                base.catalog.objects.iter().any(|x| **x == *c),
                "every point diagram wraps a base catalog object"
            );
            d.validate_object(o).unwrap();
        }
    }

    #[test]
    fn naturality_gates_the_hom_set() {
        let d = diag();
        let x = z2_id_diagram(&d);
        // Hom(Z₂, Z₂) = {id, zero} in the base; over the identity arrow the
        // natural pairs are exactly the matching ones.
        let homs = d.enumerate_homs(&x, &x, 1_000).unwrap();
        assert_eq!(homs.len(), 2);
        for f in &homs {
            d.validate_morphism(f).unwrap();
            assert_eq!(
                component_mor(f, 0).unwrap().map,
                component_mor(f, 1).unwrap().map,
                "components must agree across an identity arrow"
            );
        }
    }

    #[test]
    fn normal_epi_needs_every_component_normal() {
        let d = diag();
        let x = z2_id_diagram(&d);
        let id = identity(&x);
        assert!(ops::is_normal_epi(&d, &id).unwrap());
        // (zero, zero) is natural but pointwise non-surjective.
        let zero = Mor::new(x.clone(), x.clone(), vec![0, 0, 2, 2]);
        d.validate_morphism(&zero).unwrap();
        assert!(!ops::is_normal_epi(&d, &zero).unwrap());
        // Mixed case: trivial inclusion at position 0, identity at 1.
        let incl = d.obj(vec![one(), z2()], vec![vec![0]]);
        let f = Mor::new(incl, x.clone(), vec![0, 2, 3]);
        d.validate_morphism(&f).unwrap();
        assert!(
            !ops::is_normal_epi(&d, &f).unwrap(),
            "one non-epi component sinks the whole map"
        );
    }

    #[test]
    fn kernels_are_componentwise() {
        let d = diag();
        let x = z2_id_diagram(&d);
        let id = identity(&x);
        let k_id = ops::kernel(&d, &id).unwrap();
        assert_eq!(k_id.dom.size, 2, "identity kernel keeps only the units");
        let zero = Mor::new(x.clone(), x.clone(), vec![0, 0, 2, 2]);
        let k_zero = ops::kernel(&d, &zero).unwrap();
        assert_eq!(k_zero.dom.size, 4, "zero-map kernel is the whole diagram");
        d.validate_morphism(&k_zero).unwrap();
    }

    #[test]
    fn congruences_propagate_forward_only() {
        let d = diag();
        let x = z2_id_diagram(&d);
        let fwd = d.smallest_congruence(&x, &[(0, 1)]);
        assert!(fwd.relates(0, 1));
        assert!(
            fwd.relates(2, 3),
            "collapsing position 0 pushes through the arrow"
        );
        let bwd = d.smallest_congruence(&x, &[(2, 3)]);
        assert!(bwd.relates(2, 3));
        assert!(
            !bwd.relates(0, 1),
            "collapsing position 1 leaves position 0 alone"
        );
    }

    #[test]
    fn products_are_componentwise() {
        let d = diag();
        let x = z2_id_diagram(&d);
        let p = d.product(&x, &x).unwrap();
        assert_eq!(p.obj.size, 8);
        d.validate_object(&p.obj).unwrap();
        d.validate_morphism(&p.left).unwrap();
        d.validate_morphism(&p.right).unwrap();
    }

    #[test]
    fn cokernel_glues_along_the_arrow() {
        let d = diag();
        let x = z2_id_diagram(&d);
        let zero = Mor::new(x.clone(), x.clone(), vec![0, 0, 2, 2]);
        let data = d.cokernel(&zero).unwrap();
        assert_eq!(data.q.cod.size, x.size, "cokernel of zero is the identity");
        let id = identity(&x);
        let collapsed = d.cokernel(&id).unwrap();
        assert_eq!(collapsed.q.cod.size, 2);
        assert!(d.is_trivial(&collapsed.q.cod));
    }

    #[test]
    fn evaluation_preserves_the_calculus_on_the_derived_catalog() {
        let ws = Workspace::new(Arc::new(diag()));
        let rep = evaluation_preservation_report(&ws).unwrap();
        assert_eq!(rep.positions, 2);
        assert!(rep.objects > 0 && rep.morphisms > 0 && rep.kernels > 0);
        assert!(
            rep.failures.is_empty(),
            "componentwise evaluation must agree: {:?}",
            rep.failures
        );
        assert!(rep.exact_pairs > 0, "the derived catalog has exact pairs");
    }
}
