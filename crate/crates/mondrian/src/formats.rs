//! File formats: verdict CSV and JSON, tiling, perimeter and guillotine
//! instance documents.
//!
//! Every JSON document carries a `format` tag naming its kind and version.
//! Readers reject tags they do not know, and convert documents back into
//! core types only through the core validators.

use std::io::{Read, Write};

use mondrian_core::filters::{
    validate_candidate, Axis, CandidateError, Corners, PerimeterCandidate, SideSubset,
};
use mondrian_core::oracle::GuillotineInstance;
use mondrian_core::pieces::{Infeasible, PieceCatalog, PieceSet};
use mondrian_core::tiling::{Placement, Tiling, TilingError};
use mondrian_core::CaseSpec;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pipeline::Verdict;

pub const TILING_FORMAT: &str = "mondrian-tiling/1";
pub const PERIMETER_FORMAT: &str = "mondrian-perimeter/1";
pub const GUILLOTINE_FORMAT: &str = "mondrian-guillotine/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("unknown document format {0:?}")]
    UnknownFormat(String),
    #[error("invalid tiling: {0}")]
    Tiling(#[from] TilingError),
    #[error("invalid perimeter: {0}")]
    Perimeter(#[from] CandidateError),
    #[error("invalid case: {0}")]
    Case(#[from] mondrian_core::pieces::CaseError),
    #[error(transparent)]
    Infeasible(#[from] Infeasible),
    #[error("{w}x{h} is not a piece of this case")]
    NotAPiece { w: u32, h: u32 },
    #[error("instance pieces are not pairwise non-congruent")]
    CongruentPieces,
}

pub fn write_verdicts_csv(out: impl Write, verdicts: &[Verdict]) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    for v in verdicts {
        w.serialize(v)?;
    }
    if verdicts.is_empty() {
        w.write_record(["W", "H", "r", "stage", "survivingCandidates", "elapsed_ms"])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_verdicts_csv(input: impl Read) -> Result<Vec<Verdict>, FormatError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

pub fn write_verdicts_json(mut out: impl Write, verdicts: &[Verdict]) -> Result<(), FormatError> {
    serde_json::to_writer_pretty(&mut out, verdicts)?;
    writeln!(out)?;
    Ok(())
}

/// A placed rectangle as stored in documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub w: u32,
    pub h: u32,
    pub x: u32,
    pub y: u32,
}

/// An unplaced rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub w: u32,
    pub h: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingDoc {
    pub format: String,
    pub width: u32,
    pub height: u32,
    pub pieces: Vec<Rect>,
}

impl TilingDoc {
    pub fn from_tiling(t: &Tiling) -> Self {
        TilingDoc {
            format: TILING_FORMAT.into(),
            width: t.width,
            height: t.height,
            pieces: t
                .placements
                .iter()
                .map(|p| Rect {
                    w: p.width,
                    h: p.height,
                    x: p.x,
                    y: p.y,
                })
                .collect(),
        }
    }

    /// The tiling with one class per piece. Not validated.
    pub fn to_tiling(&self) -> Tiling {
        Tiling {
            width: self.width,
            height: self.height,
            placements: self
                .pieces
                .iter()
                .enumerate()
                .map(|(i, r)| Placement {
                    x: r.x,
                    y: r.y,
                    width: r.w,
                    height: r.h,
                    piece: i,
                    class: i,
                })
                .collect(),
        }
    }

    /// The tiling after the full validator has accepted it.
    pub fn validated(&self) -> Result<Tiling, FormatError> {
        check_format(&self.format, TILING_FORMAT)?;
        let t = self.to_tiling();
        t.validate()?;
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerDoc {
    pub bottom_left: Dims,
    pub bottom_right: Dims,
    pub top_right: Dims,
    pub top_left: Dims,
}

/// A perimeter candidate by piece dimensions. Side lists run left to right
/// (bottom, top) or bottom to top (left, right) as far as corners go; the
/// order of interior pieces is not significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerimeterDoc {
    pub format: String,
    pub width: u32,
    pub height: u32,
    pub r: u32,
    pub bottom: Vec<Dims>,
    pub right: Vec<Dims>,
    pub top: Vec<Dims>,
    pub left: Vec<Dims>,
    pub corners: CornerDoc,
}

impl PerimeterDoc {
    pub fn from_candidate(ps: &PieceSet, cand: &PerimeterCandidate) -> Self {
        let dims = |i: usize| {
            let p = ps.pieces()[i];
            Dims {
                w: p.width,
                h: p.height,
            }
        };
        // Start corner, interior pieces, end corner.
        let side_list = |s: &SideSubset, a: usize, b: usize| -> Vec<Dims> {
            let mut v = vec![dims(a)];
            v.extend(
                s.members
                    .iter()
                    .copied()
                    .filter(|&i| i != a && i != b)
                    .map(dims),
            );
            if b != a {
                v.push(dims(b));
            }
            v
        };
        let k = cand.corners;
        let case = ps.case();
        PerimeterDoc {
            format: PERIMETER_FORMAT.into(),
            width: case.width,
            height: case.height,
            r: case.pieces,
            bottom: side_list(&cand.bottom, k.bottom_left, k.bottom_right),
            right: side_list(&cand.right, k.bottom_right, k.top_right),
            top: side_list(&cand.top, k.top_left, k.top_right),
            left: side_list(&cand.left, k.bottom_left, k.top_left),
            corners: CornerDoc {
                bottom_left: dims(k.bottom_left),
                bottom_right: dims(k.bottom_right),
                top_right: dims(k.top_right),
                top_left: dims(k.top_left),
            },
        }
    }

    /// Rebuilds and validates the candidate against the case's piece set.
    pub fn to_candidate(&self) -> Result<(PieceSet, PerimeterCandidate), FormatError> {
        check_format(&self.format, PERIMETER_FORMAT)?;
        let ps = PieceSet::new(CaseSpec::new(self.width, self.height, self.r)?)?;
        let index = |d: &Dims| {
            ps.pieces()
                .iter()
                .position(|p| p.width == d.w && p.height == d.h)
                .ok_or(FormatError::NotAPiece { w: d.w, h: d.h })
        };
        let subset = |axis: Axis, list: &[Dims]| -> Result<SideSubset, FormatError> {
            let mut members = list.iter().map(index).collect::<Result<Vec<_>, _>>()?;
            members.sort_unstable();
            let span: u64 = members
                .iter()
                .map(|&i| axis.span(&ps.pieces()[i]) as u64)
                .sum();
            let span = u32::try_from(span).unwrap_or(u32::MAX);
            Ok(SideSubset {
                axis,
                members,
                span,
            })
        };
        let cand = PerimeterCandidate {
            bottom: subset(Axis::Horizontal, &self.bottom)?,
            top: subset(Axis::Horizontal, &self.top)?,
            left: subset(Axis::Vertical, &self.left)?,
            right: subset(Axis::Vertical, &self.right)?,
            corners: Corners {
                bottom_left: index(&self.corners.bottom_left)?,
                bottom_right: index(&self.corners.bottom_right)?,
                top_right: index(&self.corners.top_right)?,
                top_left: index(&self.corners.top_left)?,
            },
        };
        validate_candidate(&ps, &cand)?;
        Ok((ps, cand))
    }

    /// One arrangement of the listed pieces along the board edges: corners in
    /// their corners and interior pieces in list order between them.
    pub fn arrangement(&self) -> Vec<Rect> {
        let (w, h) = (self.width, self.height);
        let mut out: Vec<Rect> = Vec::new();
        let mut push = |r: Rect| {
            if !out.contains(&r) {
                out.push(r);
            }
        };
        let mut x = 0;
        for d in &self.bottom {
            push(Rect {
                w: d.w,
                h: d.h,
                x,
                y: 0,
            });
            x += d.w;
        }
        let mut x = 0;
        for d in &self.top {
            push(Rect {
                w: d.w,
                h: d.h,
                x,
                y: h.saturating_sub(d.h),
            });
            x += d.w;
        }
        let mut y = 0;
        for d in &self.left {
            push(Rect {
                w: d.w,
                h: d.h,
                x: 0,
                y,
            });
            y += d.h;
        }
        let mut y = 0;
        for d in &self.right {
            push(Rect {
                w: d.w,
                h: d.h,
                x: w.saturating_sub(d.w),
                y,
            });
            y += d.h;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuillotineDoc {
    pub format: String,
    pub width: u32,
    pub height: u32,
    pub seed: u64,
    pub pieces: Vec<Dims>,
    pub witness: Vec<Rect>,
}

impl GuillotineDoc {
    pub fn from_instance(inst: &GuillotineInstance) -> Self {
        GuillotineDoc {
            format: GUILLOTINE_FORMAT.into(),
            width: inst.width,
            height: inst.height,
            seed: inst.seed,
            pieces: inst.pieces.iter().map(|&(w, h)| Dims { w, h }).collect(),
            witness: TilingDoc::from_tiling(&inst.witness).pieces,
        }
    }

    /// The instance after checking that its witness tiles the board and its
    /// pieces are pairwise non-congruent.
    pub fn to_instance(&self) -> Result<GuillotineInstance, FormatError> {
        check_format(&self.format, GUILLOTINE_FORMAT)?;
        let mut shapes: Vec<(u32, u32)> = self
            .pieces
            .iter()
            .map(|d| (d.w.min(d.h), d.w.max(d.h)))
            .collect();
        shapes.sort_unstable();
        if shapes.windows(2).any(|p| p[0] == p[1]) {
            return Err(FormatError::CongruentPieces);
        }
        let witness = TilingDoc {
            format: TILING_FORMAT.into(),
            width: self.width,
            height: self.height,
            pieces: self.witness.clone(),
        }
        .validated()?;
        Ok(GuillotineInstance {
            width: self.width,
            height: self.height,
            pieces: self.pieces.iter().map(|d| (d.w, d.h)).collect(),
            witness,
            seed: self.seed,
        })
    }
}

fn check_format(got: &str, want: &str) -> Result<(), FormatError> {
    if got == want {
        Ok(())
    } else {
        Err(FormatError::UnknownFormat(got.into()))
    }
}

/// Any document this crate writes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Tiling(TilingDoc),
    Perimeter(PerimeterDoc),
    Guillotine(GuillotineDoc),
}

/// Parses a JSON document, dispatching on its `format` tag.
pub fn read_document(text: &str) -> Result<Document, FormatError> {
    #[derive(Deserialize)]
    struct Tag {
        format: String,
    }
    let tag: Tag = serde_json::from_str(text)?;
    match tag.format.as_str() {
        TILING_FORMAT => Ok(Document::Tiling(serde_json::from_str(text)?)),
        PERIMETER_FORMAT => Ok(Document::Perimeter(serde_json::from_str(text)?)),
        GUILLOTINE_FORMAT => Ok(Document::Guillotine(serde_json::from_str(text)?)),
        other => Err(FormatError::UnknownFormat(other.into())),
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
