//! Incidence-matrix exports (CSV and JSON) and the matching JSON loader.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builders::steiner_miquel_labels;
use crate::incidence::{signature, ConfigSignature, IncidenceStructure, Label, StructureError};
use crate::subset::FiniteSubset;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("steiner-miquel labels apply to cox(4) only")]
    LabelsNotApplicable,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Row/column labelling for matrix exports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelMode {
    /// Canonical (cardinality, bit value) order with subset labels.
    Canonical,
    /// The classical `q`/`A`/`B` names and row order, valid for cox(4).
    SteinerMiquel,
}

/// CSV incidence matrix: one row per block, one column per point,
/// 0/1 entries; the first cell of the header row is empty.
pub fn incidence_csv(s: &IncidenceStructure, mode: LabelMode) -> Result<String, ExportError> {
    let ((row_order, row_names), (col_order, col_names)) = ordering(s, mode)?;
    let mut wtr = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(col_names);
    wtr.write_record(&header)?;
    for (bi, name) in row_order.iter().zip(&row_names) {
        let mut record = vec![name.clone()];
        for pi in &col_order {
            record.push(if s.is_flag(*pi, *bi) { "1".into() } else { "0".into() });
        }
        wtr.write_record(&record)?;
    }
    let bytes = wtr.into_inner().expect("in-memory writer");
    Ok(String::from_utf8(bytes).expect("utf8 csv"))
}

/// Index order and display names for one side of the matrix.
type SideOrdering = (Vec<usize>, Vec<String>);

fn ordering(
    s: &IncidenceStructure,
    mode: LabelMode,
) -> Result<(SideOrdering, SideOrdering), ExportError> {
    match mode {
        LabelMode::Canonical => Ok((
            (
                (0..s.num_blocks()).collect(),
                s.block_labels().iter().map(|l| l.to_string()).collect(),
            ),
            (
                (0..s.num_points()).collect(),
                s.point_labels().iter().map(|l| l.to_string()).collect(),
            ),
        )),
        LabelMode::SteinerMiquel => {
            let labels = steiner_miquel_labels();
            let mut rows: SideOrdering = (Vec::new(), Vec::new());
            for (name, set) in &labels.blocks {
                let bi = s
                    .set_block_index(set)
                    .ok_or(ExportError::LabelsNotApplicable)?;
                rows.0.push(bi);
                rows.1.push(name.clone());
            }
            let mut cols: SideOrdering = (Vec::new(), Vec::new());
            for (name, set) in &labels.points {
                let pi = s
                    .set_point_index(set)
                    .ok_or(ExportError::LabelsNotApplicable)?;
                cols.0.push(pi);
                cols.1.push(name.clone());
            }
            Ok((rows, cols))
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct StructureDto {
    pub points: Vec<String>,
    pub blocks: Vec<String>,
    pub flags: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<ConfigSignature>,
}

/// JSON incidence export with labels, flags, and the signature.
pub fn incidence_json(s: &IncidenceStructure) -> Result<String, ExportError> {
    let dto = StructureDto {
        points: s.point_labels().iter().map(|l| l.to_string()).collect(),
        blocks: s.block_labels().iter().map(|l| l.to_string()).collect(),
        flags: s.flags().collect(),
        signature: signature(s).ok(),
    };
    Ok(serde_json::to_string_pretty(&dto)? + "\n")
}

/// Load a structure exported by [`incidence_json`]. Labels that parse as
/// subsets of `{1, …, 16}` are kept opaque; identity is by string.
pub fn structure_from_json(text: &str) -> Result<IncidenceStructure, ExportError> {
    let dto: StructureDto = serde_json::from_str(text)?;
    let s = IncidenceStructure::new(
        dto.points.iter().map(|l| Label::from(l.as_str())).collect(),
        dto.blocks.iter().map(|l| Label::from(l.as_str())).collect(),
        dto.flags,
    )?;
    Ok(s)
}

/// Parse a comma-separated list of subset tokens such as
/// `"{},{1,2},{1,3}"`, splitting only at top-level commas.
pub fn parse_subset_list(n: u8, text: &str) -> Result<Vec<FiniteSubset>, crate::subset::SubsetError> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '{' => {
                depth += 1;
                current.push(ch);
            }
            '}' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut current));
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        parts.push(current);
    }
    parts
        .into_iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| FiniteSubset::parse(n, &p))
        .collect()
}
