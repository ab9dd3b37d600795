//! JSON documents for codes and plain flag lists.
//!
//! Matrices are embedded as strings in the algebra text format
//! (`"q rows cols\n..."`).

use serde::{Deserialize, Serialize};

use super::sandwich::{Flag, FlagCode, SandwichParams};
use crate::algebra::{FieldElement, FieldSpec, MatrixFq};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsFile {
    pub p: u64,
    pub m: u32,
    /// Low to high, leading 1 included; empty for prime fields.
    pub modulus: Vec<u64>,
    pub k1: usize,
    pub r: usize,
    /// Low to high element reps, leading 1 included.
    pub prim_poly: Vec<u32>,
}

/// A serialized sandwich code: parameters plus generator matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub params: ParamsFile,
    pub generators: Vec<String>,
}

impl ParamsFile {
    pub fn from_params(params: &SandwichParams) -> Self {
        let field = params.field();
        ParamsFile {
            p: field.p() as u64,
            m: field.m(),
            modulus: field.modulus().iter().map(|&c| c as u64).collect(),
            k1: params.k1(),
            r: params.r(),
            prim_poly: params.prim_poly().iter().map(|c| c.rep()).collect(),
        }
    }

    pub fn field(&self) -> Result<FieldSpec> {
        let modulus = (!self.modulus.is_empty()).then_some(self.modulus.as_slice());
        FieldSpec::new(self.p, self.m, modulus)
    }

    /// Rebuilds and revalidates the parameters, including primitivity.
    pub fn to_params(&self) -> Result<SandwichParams> {
        let field = self.field()?;
        let poly = self
            .prim_poly
            .iter()
            .map(|&c| field.element(c as u64))
            .collect::<Result<Vec<FieldElement>>>()?;
        SandwichParams::new(field, self.k1, self.r, Some(poly))
    }
}

impl CodeFile {
    pub fn from_code(code: &FlagCode) -> Self {
        CodeFile {
            params: ParamsFile::from_params(code.params()),
            generators: code.generators().iter().map(MatrixFq::to_text).collect(),
        }
    }

    /// Parses the generator matrices without checking their rank.
    pub fn generator_matrices(&self, field: &FieldSpec) -> Result<Vec<MatrixFq>> {
        self.generators
            .iter()
            .map(|g| MatrixFq::parse_text(field, g))
            .collect()
    }

    /// Full reconstruction; fails on rank-deficient or malformed generators.
    pub fn to_code(&self) -> Result<FlagCode> {
        let params = self.params.to_params()?;
        let generators = self.generator_matrices(params.field())?;
        FlagCode::from_generators(params, generators)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Arbitrary full flags, each given by a matrix whose first `j` rows span
/// the `j`-dimensional member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagListFile {
    /// Field in the `"p m modulus..."` form.
    pub field: String,
    pub flags: Vec<String>,
}

impl FlagListFile {
    pub fn from_generators(field: &FieldSpec, generators: &[MatrixFq]) -> Self {
        FlagListFile {
            field: field.serialize(),
            flags: generators.iter().map(MatrixFq::to_text).collect(),
        }
    }

    pub fn to_flags(&self) -> Result<Vec<Flag>> {
        let field = FieldSpec::parse(&self.field)?;
        self.flags
            .iter()
            .map(|text| Flag::from_generator(&MatrixFq::parse_text(&field, text)?))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("flag list serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
