use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;

/// Flavour of binary relation carried by relational objects.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelKind {
    Reflexive,
    Preorder,
    Equivalence,
}

impl RelKind {
    pub fn name(self) -> &'static str {
        match self {
            RelKind::Reflexive => "reflexive",
            RelKind::Preorder => "preorder",
            RelKind::Equivalence => "equivalence",
        }
    }
}

/// Identifies which concrete category an object belongs to. Slice and diagram
/// categories are parametric in a base backend, so the tag nests.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BackendTag {
    PSet,
    CMon,
    Mon,
    PreordCMon,
    POCMon,
    Rel(RelKind),
    Grpd,
    OrdGrp,
    Slice(Box<BackendTag>),
    Diagram(Box<BackendTag>),
}

impl fmt::Display for BackendTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendTag::PSet => write!(f, "fin-pset"),
            BackendTag::CMon => write!(f, "fin-cmon"),
            BackendTag::Mon => write!(f, "fin-mon"),
            BackendTag::PreordCMon => write!(f, "fin-preord-cmon"),
            BackendTag::POCMon => write!(f, "fin-pocmon"),
            BackendTag::Rel(k) => write!(f, "fin-rel-{}", short_kind(*k)),
            BackendTag::Grpd => write!(f, "fin-grpd"),
            BackendTag::OrdGrp => write!(f, "fin-ordgrp"),
            BackendTag::Slice(b) => write!(f, "slice({b})"),
            BackendTag::Diagram(b) => write!(f, "diagram({b})"),
        }
    }
}

fn short_kind(k: RelKind) -> &'static str {
    match k {
        RelKind::Reflexive => "refl",
        RelKind::Preorder => "preord",
        RelKind::Equivalence => "equiv",
    }
}

impl FromStr for BackendTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("slice(").and_then(|r| r.strip_suffix(')')) {
            return Ok(BackendTag::Slice(Box::new(inner.parse()?)));
        }
        if let Some(inner) = s.strip_prefix("diagram(").and_then(|r| r.strip_suffix(')')) {
            return Ok(BackendTag::Diagram(Box::new(inner.parse()?)));
        }
        match s {
            "fin-pset" => Ok(BackendTag::PSet),
            "fin-cmon" => Ok(BackendTag::CMon),
            "fin-mon" => Ok(BackendTag::Mon),
            "fin-preord-cmon" => Ok(BackendTag::PreordCMon),
            "fin-pocmon" => Ok(BackendTag::POCMon),
            "fin-rel-refl" => Ok(BackendTag::Rel(RelKind::Reflexive)),
            "fin-rel-preord" => Ok(BackendTag::Rel(RelKind::Preorder)),
            "fin-rel-equiv" => Ok(BackendTag::Rel(RelKind::Equivalence)),
            "fin-grpd" => Ok(BackendTag::Grpd),
            "fin-ordgrp" => Ok(BackendTag::OrdGrp),
            other => Err(format!("unknown backend tag `{other}`")),
        }
    }
}

impl Serialize for BackendTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BackendTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Structure tables attached to an object's carrier `0..size`.
///
/// Conventions: operation tables are row-major (`table[a * n + b]` is `a · b`);
/// relation sets list ordered pairs and always contain the diagonal; groupoid
/// carriers are arrow sets, objects being represented by their identity
/// arrows, with `comp[a * n + b]` the diagrammatic composite "a then b".
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Structure {
    Pointed {
        basepoint: usize,
    },
    Monoid {
        unit: usize,
        commutative: bool,
        table: Vec<usize>,
    },
    OrderedMonoid {
        unit: usize,
        antisymmetric: bool,
        table: Vec<usize>,
        order: BTreeSet<(usize, usize)>,
    },
    Relation {
        kind: RelKind,
        pairs: BTreeSet<(usize, usize)>,
    },
    Groupoid {
        src: Vec<usize>,
        tgt: Vec<usize>,
        inv: Vec<usize>,
        comp: Vec<Option<usize>>,
    },
    OrderedGroup {
        unit: usize,
        table: Vec<usize>,
        cone: BTreeSet<usize>,
    },
    Slice {
        under: Box<Obj>,
        base: Box<Obj>,
        anchor: Vec<usize>,
    },
    Diagram {
        components: Vec<Obj>,
        arrows: Vec<Vec<usize>>,
    },
}

/// A finite object: a carrier `0..size` plus backend-specific structure.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Obj {
    pub backend: BackendTag,
    pub size: usize,
    pub structure: Structure,
}

impl Obj {
    pub fn carrier(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// Binary operation lookup for monoid-like structures.
    pub fn op(&self, a: usize, b: usize) -> usize {
        match &self.structure {
            Structure::Monoid { table, .. }
            | Structure::OrderedMonoid { table, .. }
            | Structure::OrderedGroup { table, .. } => table[a * self.size + b],
            _ => panic!("op on non-monoid structure"),
        }
    }

    pub fn unit(&self) -> Option<usize> {
        match &self.structure {
            Structure::Monoid { unit, .. }
            | Structure::OrderedMonoid { unit, .. }
            | Structure::OrderedGroup { unit, .. } => Some(*unit),
            Structure::Pointed { basepoint } => Some(*basepoint),
            _ => None,
        }
    }

    /// Offsets of each component block inside a diagram carrier.
    pub fn diagram_offsets(&self) -> Option<Vec<usize>> {
        match &self.structure {
            Structure::Diagram { components, .. } => {
                let mut offs = Vec::with_capacity(components.len() + 1);
                let mut acc = 0;
                for c in components {
                    offs.push(acc);
                    acc += c.size;
                }
                offs.push(acc);
                Some(offs)
            }
            _ => None,
        }
    }
}

/// A morphism: a total map table between two objects' carriers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Mor {
    pub dom: Arc<Obj>,
    pub cod: Arc<Obj>,
    pub map: Vec<usize>,
}

impl Mor {
    pub fn new(dom: Arc<Obj>, cod: Arc<Obj>, map: Vec<usize>) -> Self {
        Mor { dom, cod, map }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        self.map.iter().all(|&y| {
            if seen[y] {
                false
            } else {
                seen[y] = true;
                true
            }
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size == self.cod.size && self.is_injective()
    }

    /// Sorted, deduplicated image of the map.
    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.map.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }
}

/// A commuting square: `right ∘ top = bottom ∘ left` as table equality,
/// with `top: A → B`, `left: A → C`, `right: B → D`, `bottom: C → D`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Square {
    pub top: Mor,
    pub left: Mor,
    pub right: Mor,
    pub bottom: Mor,
}

impl Square {
    pub fn commutes(&self) -> bool {
        self.top.dom == self.left.dom
            && self.top.cod == self.right.dom
            && self.left.cod == self.bottom.dom
            && self.right.cod == self.bottom.cod
            && self
                .top
                .dom
                .carrier()
                .all(|x| self.right.apply(self.top.apply(x)) == self.bottom.apply(self.left.apply(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backend_tag_roundtrip() {
        let tags = [
            BackendTag::PSet,
            BackendTag::CMon,
            BackendTag::Rel(RelKind::Preorder),
            BackendTag::Slice(Box::new(BackendTag::CMon)),
            BackendTag::Diagram(Box::new(BackendTag::Rel(RelKind::Equivalence))),
        ];
        for t in tags {
            let s = t.to_string();
            let back: BackendTag = s.parse().unwrap();
            assert_eq!(t, back, "roundtrip through `{s}`");
        }
    }

    #[test]
    fn backend_tag_rejects_unknown() {
        assert!("fin-widget".parse::<BackendTag>().is_err());
        assert!("slice(".parse::<BackendTag>().is_err());
    }
}
