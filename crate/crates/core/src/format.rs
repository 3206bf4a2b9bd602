//! JSON document formats for every input and output type.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::congruence::Operation;
use crate::error::{Error, Result};
use crate::{EquivalenceRelation, EquivalencedLattice, FiniteAlgebra, FiniteLattice, PairFunction, Representation};

/// A type with a JSON document form. Emitting and re-parsing gives back an
/// equal value.
pub trait JsonFormat: Sized {
    type Doc: Serialize + DeserializeOwned;

    fn to_doc(&self) -> Self::Doc;
    fn from_doc(doc: Self::Doc) -> Result<Self>;

    fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("documents serialize")
    }

    fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("documents serialize")
    }

    fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(parse_doc(text)?)
    }

    fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let doc = serde_json::from_value(value).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(doc)
    }
}

/// Parse errors carry serde's line and column.
pub fn parse_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub size: usize,
    /// Order pairs `[below, above]`; cover pairs are enough.
    pub leq: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub covers: bool,
}

impl JsonFormat for FiniteLattice {
    type Doc = LatticeDoc;

    fn to_doc(&self) -> LatticeDoc {
        LatticeDoc {
            size: self.size(),
            leq: self.cover_pairs().into_iter().map(|(x, y)| [x, y]).collect(),
            labels: self.labels().map(<[String]>::to_vec),
            covers: true,
        }
    }

    fn from_doc(doc: LatticeDoc) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = doc.leq.iter().map(|p| (p[0], p[1])).collect();
        let l = FiniteLattice::from_leq_pairs(doc.size, &pairs)?;
        match doc.labels {
            Some(labels) => l.with_labels(labels),
            None => Ok(l),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqrelDoc {
    pub ground: usize,
    pub classes: Vec<Vec<usize>>,
}

impl JsonFormat for EquivalenceRelation {
    type Doc = EqrelDoc;

    fn to_doc(&self) -> EqrelDoc {
        EqrelDoc {
            ground: self.ground_size(),
            classes: self.classes(),
        }
    }

    fn from_doc(doc: EqrelDoc) -> Result<Self> {
        EquivalenceRelation::from_classes(doc.ground, &doc.classes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationDoc {
    pub lattice: LatticeDoc,
    pub ground: usize,
    /// Keyed by element index or label.
    pub alpha: BTreeMap<String, EqrelDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decode: Option<Vec<String>>,
}

impl JsonFormat for Representation {
    type Doc = RepresentationDoc;

    fn to_doc(&self) -> RepresentationDoc {
        RepresentationDoc {
            lattice: self.lattice().to_doc(),
            ground: self.ground_size(),
            alpha: self
                .alphas()
                .iter()
                .enumerate()
                .map(|(i, a)| (i.to_string(), a.to_doc()))
                .collect(),
            decode: self.decode().map(<[String]>::to_vec),
        }
    }

    fn from_doc(doc: RepresentationDoc) -> Result<Self> {
        let lattice = FiniteLattice::from_doc(doc.lattice)?;
        let mut alpha: Vec<Option<EquivalenceRelation>> = vec![None; lattice.size()];
        for (key, rel) in doc.alpha {
            let r = key
                .parse::<usize>()
                .ok()
                .filter(|&i| i < lattice.size())
                .or_else(|| lattice.element_named(&key))
                .ok_or_else(|| Error::Malformed(format!("alpha key {key:?} names no element")))?;
            let rel = EquivalenceRelation::from_doc(rel)?;
            if rel.ground_size() != doc.ground {
                return Err(Error::GroundMismatch {
                    left: doc.ground,
                    right: rel.ground_size(),
                });
            }
            if alpha[r].replace(rel).is_some() {
                return Err(Error::Malformed(format!("alpha given twice for element {r}")));
            }
        }
        let alpha = alpha
            .into_iter()
            .enumerate()
            .map(|(r, a)| a.ok_or_else(|| Error::Malformed(format!("alpha missing for element {r}"))))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(lattice, alpha, doc.decode)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub family: Vec<RepresentationDoc>,
}

pub fn family_to_doc(family: &[Representation]) -> FamilyDoc {
    FamilyDoc {
        family: family.iter().map(JsonFormat::to_doc).collect(),
    }
}

pub fn family_from_doc(doc: FamilyDoc) -> Result<Vec<Representation>> {
    doc.family.into_iter().map(Representation::from_doc).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub size: usize,
    pub ops: Vec<Operation>,
}

impl JsonFormat for FiniteAlgebra {
    type Doc = AlgebraDoc;

    fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            size: self.carrier_size(),
            ops: self.ops().to_vec(),
        }
    }

    fn from_doc(doc: AlgebraDoc) -> Result<Self> {
        FiniteAlgebra::new(doc.size, doc.ops)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalencedLatticeDoc {
    #[serde(flatten)]
    pub lattice: LatticeDoc,
    #[serde(rename = "E")]
    pub e: Vec<[usize; 2]>,
}

impl JsonFormat for EquivalencedLattice {
    type Doc = EquivalencedLatticeDoc;

    fn to_doc(&self) -> EquivalencedLatticeDoc {
        let e = self
            .e()
            .classes()
            .iter()
            .flat_map(|c| c.windows(2).map(|w| [w[0], w[1]]).collect::<Vec<_>>())
            .collect();
        EquivalencedLatticeDoc {
            lattice: self.lattice().to_doc(),
            e,
        }
    }

    fn from_doc(doc: EquivalencedLatticeDoc) -> Result<Self> {
        let lattice = FiniteLattice::from_doc(doc.lattice)?;
        let pairs: Vec<(usize, usize)> = doc.e.iter().map(|p| (p[0], p[1])).collect();
        EquivalencedLattice::from_pairs(lattice, &pairs)
    }
}

/// Either `values` (one per pair, lexicographic) or a `kernel` of class ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFunctionDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<u32>>,
}

impl JsonFormat for PairFunction {
    type Doc = PairFunctionDoc;

    fn to_doc(&self) -> PairFunctionDoc {
        match self.values() {
            Some(v) => PairFunctionDoc {
                n: self.n(),
                values: Some(v.to_vec()),
                kernel: None,
            },
            None => PairFunctionDoc {
                n: self.n(),
                values: None,
                kernel: Some(self.kernel().class_ids().to_vec()),
            },
        }
    }

    fn from_doc(doc: PairFunctionDoc) -> Result<Self> {
        match (doc.values, doc.kernel) {
            (Some(v), None) => PairFunction::from_values(doc.n, v),
            (None, Some(k)) => PairFunction::from_kernel(doc.n, EquivalenceRelation::from_labels(k)),
            _ => Err(Error::Malformed(
                "pair function needs exactly one of values, kernel".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{hexagon, m_lattice, pentagon};
    use crate::representation::{m3_base_rep, pairs_b2_rep};

    #[test]
    fn lattice_round_trip() {
        for l in [pentagon(), hexagon(), m_lattice(4), pentagon().without_labels()] {
            assert_eq!(FiniteLattice::from_json(&l.to_json()).unwrap(), l);
        }
    }

    #[test]
    fn full_order_input_accepted() {
        let text = r#"{"size": 4, "leq": [[0,1],[0,2],[1,3],[2,3],[0,3]]}"#;
        let l = FiniteLattice::from_json(text).unwrap();
        assert_eq!(l.top(), 3);
        assert!(l.labels().is_none());
    }

    #[test]
    fn parse_error_has_location() {
        let err = FiniteLattice::from_json("{\"size\": 2,\n \"leq\": [[0,1]").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn representation_round_trip_and_labels() {
        let r = pairs_b2_rep(4).unwrap();
        assert_eq!(Representation::from_json(&r.to_json()).unwrap(), r);
        let mut doc = m3_base_rep().to_doc();
        let a = doc.alpha.remove("1").unwrap();
        doc.alpha.insert("a".into(), a);
        assert_eq!(Representation::from_doc(doc).unwrap(), m3_base_rep());
    }

    #[test]
    fn missing_alpha_rejected() {
        let mut doc = m3_base_rep().to_doc();
        doc.alpha.remove("2");
        assert!(matches!(Representation::from_doc(doc), Err(Error::Malformed(_))));
    }

    #[test]
    fn algebra_and_pair_function_round_trip() {
        let z4 = FiniteAlgebra::cyclic_group(4);
        assert_eq!(FiniteAlgebra::from_json(&z4.to_json()).unwrap(), z4);
        let f = PairFunction::from_fn(5, |x, y| (x * y) as i64);
        assert_eq!(PairFunction::from_json(&f.to_json()).unwrap(), f);
        let g = PairFunction::from_kernel(3, EquivalenceRelation::from_labels([0, 1, 0])).unwrap();
        assert_eq!(PairFunction::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn equivalenced_lattice_round_trip() {
        let el = EquivalencedLattice::from_pairs(m_lattice(3), &[(1, 3), (2, 3)]).unwrap();
        let v = el.to_json_value();
        assert!(v.get("E").is_some() && v.get("size").is_some());
        assert_eq!(EquivalencedLattice::from_json(&el.to_json()).unwrap(), el);
    }
}
