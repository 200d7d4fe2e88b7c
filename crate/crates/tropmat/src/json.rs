//! JSON interchange: weight matrices, type collections, subdivisions and
//! check reports.  Sets are sorted ascending integer arrays; rationals are
//! strings in "p/q" or decimal form.

use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, parse_rational};
use crate::realize::WeightMatrix;
use crate::subdivision::{MixedSubdivision, SubdivisionFailure, SubdivisionReport};
use crate::subset::Subset;
use crate::tom::{AxiomReport, Tom};
use crate::types::NdType;
use crate::{Error, Result};

/// Wire form of a weight matrix:
/// `{"n":2,"d":3,"w":[["0","0","0"],["0","1","-1/2"]]}`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct WeightsFile {
    pub n: usize,
    pub d: u8,
    pub w: Vec<Vec<String>>,
}

impl WeightsFile {
    pub fn to_weights(&self) -> Result<WeightMatrix> {
        if self.w.len() != self.n || self.w.iter().any(|r| r.len() != self.d as usize) {
            return Err(Error::BadWeights {
                n: self.n,
                d: self.d,
            });
        }
        let rows: Result<Vec<Vec<_>>> = self
            .w
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect())
            .collect();
        WeightMatrix::new(rows?)
    }

    pub fn from_weights(w: &WeightMatrix) -> Self {
        WeightsFile {
            n: w.n(),
            d: w.d(),
            w: w.rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

/// Wire form of a type collection:
/// `{"n":2,"d":3,"types":[[[1,2,3],[1]],…]}`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TomFile {
    pub n: usize,
    pub d: u8,
    pub types: Vec<Vec<Vec<u8>>>,
}

impl TomFile {
    pub fn to_tom(&self) -> Result<Tom> {
        let types: Result<Vec<NdType>> = self
            .types
            .iter()
            .map(|t| cell_from_wire(self.d, t))
            .collect();
        Tom::new(self.n, self.d, types?)
    }

    pub fn from_tom(m: &Tom) -> Self {
        TomFile {
            n: m.n(),
            d: m.d(),
            types: m.iter().map(cell_to_wire).collect(),
        }
    }
}

/// Wire form of a mixed subdivision:
/// `{"n":2,"d":3,"maximal_cells":[[[1,2,3],[1]],[[2,3],[1,2]],[[3],[1,2,3]]]}`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SubdivisionFile {
    pub n: usize,
    pub d: u8,
    pub maximal_cells: Vec<Vec<Vec<u8>>>,
}

impl SubdivisionFile {
    pub fn to_subdivision(&self) -> Result<MixedSubdivision> {
        let cells: Result<Vec<NdType>> = self
            .maximal_cells
            .iter()
            .map(|t| cell_from_wire(self.d, t))
            .collect();
        MixedSubdivision::new(self.n, self.d, cells?)
    }

    pub fn from_subdivision(s: &MixedSubdivision) -> Self {
        SubdivisionFile {
            n: s.n(),
            d: s.d(),
            maximal_cells: s.maximal_cells().iter().map(cell_to_wire).collect(),
        }
    }
}

fn cell_from_wire(d: u8, entries: &[Vec<u8>]) -> Result<NdType> {
    NdType::new(
        d,
        entries
            .iter()
            .map(|e| Subset::from_labels(e.iter().copied()))
            .collect(),
    )
}

fn cell_to_wire(t: &NdType) -> Vec<Vec<u8>> {
    t.entries().iter().map(|e| e.to_labels()).collect()
}

/// Wire form of one axiom report.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AxiomReportWire {
    pub axiom: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomReportWire {
    pub fn from_report(r: &AxiomReport) -> Self {
        AxiomReportWire {
            axiom: r.axiom.to_string(),
            pass: r.pass_flag(),
            witness: r.witness.as_ref().map(|w| w.to_string()),
        }
    }
}

/// Wire form of a subdivision report.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SubdivisionReportWire {
    pub pass: bool,
    pub failures: Vec<SubdivisionFailureWire>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SubdivisionFailureWire {
    pub kind: String,
    pub witness: String,
}

impl SubdivisionReportWire {
    pub fn from_report(r: &SubdivisionReport) -> Self {
        SubdivisionReportWire {
            pass: r.pass(),
            failures: r
                .failures
                .iter()
                .map(|f| SubdivisionFailureWire {
                    kind: match f {
                        SubdivisionFailure::Dimension { .. } => "dimension".into(),
                        SubdivisionFailure::Comparability { .. } => "comparability".into(),
                        SubdivisionFailure::Volume { .. } => "volume".into(),
                    },
                    witness: f.to_string(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivision_wire_round_trip() {
        let json = r#"{"n":2,"d":3,"maximal_cells":[[[1,2,3],[1]],[[2,3],[1,2]],[[3],[1,2,3]]]}"#;
        let file: SubdivisionFile = serde_json::from_str(json).unwrap();
        let s = file.to_subdivision().unwrap();
        assert_eq!(s.maximal_cells().len(), 3);
        let back = SubdivisionFile::from_subdivision(&s);
        let reparsed = serde_json::to_string(&back).unwrap();
        let file2: SubdivisionFile = serde_json::from_str(&reparsed).unwrap();
        assert_eq!(file2.to_subdivision().unwrap(), s);
    }

    #[test]
    fn weights_wire_round_trip() {
        let json = r#"{"n":2,"d":3,"w":[["0","0","0"],["0","1","-1/2"]]}"#;
        let file: WeightsFile = serde_json::from_str(json).unwrap();
        let w = file.to_weights().unwrap();
        let back = WeightsFile::from_weights(&w);
        assert_eq!(back.to_weights().unwrap(), w);
    }

    #[test]
    fn bad_wire_data_is_rejected() {
        let json = r#"{"n":1,"d":2,"types":[[[1],[2]]]}"#;
        let file: TomFile = serde_json::from_str(json).unwrap();
        assert!(file.to_tom().is_err()); // wrong n

        let json = r#"{"n":1,"d":2,"maximal_cells":[[[]]]}"#;
        let file: SubdivisionFile = serde_json::from_str(json).unwrap();
        assert!(file.to_subdivision().is_err()); // empty entry
    }
}
