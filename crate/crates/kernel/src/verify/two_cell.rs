//! Two simplices glued along a facet, and the trace-continuity check for Ė.
//!
//! Forms on the shared facet live in the facet's own frame: its global
//! vertex labels, sorted, become `0..n-1`. Each cell numbers its vertices by
//! position in a positively oriented vertex list.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{dot_extend, trace_free_space};
use crate::polyform::{Family, PolyForm};
use crate::scalar::{frac, Rational};
use crate::simplex::{Face, Orientation, Simplex};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoCellMesh {
    pub n: usize,
    #[serde(serialize_with = "serialize_points")]
    pub vertices: Vec<Vec<Rational>>,
    /// Global vertex labels of each cell, positively oriented.
    pub cells: [Vec<usize>; 2],
}

fn serialize_points<S: serde::Serializer>(
    pts: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = pts
        .iter()
        .map(|p| p.iter().map(super::rational_string).collect())
        .collect();
    strings.serialize(s)
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InvalidInput(format!("inconsistent mesh: {}", msg.into()))
}

impl TwoCellMesh {
    /// Validates the mesh and reorders each cell to positive orientation.
    pub fn new(n: usize, vertices: Vec<Vec<Rational>>, cells: [Vec<usize>; 2]) -> Result<Self> {
        if n == 0 || vertices.iter().any(|v| v.len() != n) {
            return Err(inconsistent("vertex coordinates must have n entries"));
        }
        let mut oriented = Vec::new();
        for cell in &cells {
            let mut sorted = cell.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if cell.len() != n + 1
                || sorted.len() != n + 1
                || sorted.iter().any(|&l| l >= vertices.len())
            {
                return Err(inconsistent(format!(
                    "cell {cell:?} is not n+1 distinct vertices"
                )));
            }
            oriented.push(orient(&vertices, cell)?);
        }
        let shared: Vec<usize> = oriented[0]
            .iter()
            .copied()
            .filter(|l| oriented[1].contains(l))
            .collect();
        if shared.len() != n {
            return Err(inconsistent("cells must share exactly one facet"));
        }
        // the two apexes must lie on opposite sides of the shared facet
        let side = |cell: &[usize]| -> Result<bool> {
            let apex = cell.iter().find(|l| !shared.contains(l)).expect("apex");
            let mut pts = vec![vertices[*apex].clone()];
            pts.extend(shared.iter().map(|&l| vertices[l].clone()));
            positive(pts)
        };
        if side(&oriented[0])? == side(&oriented[1])? {
            return Err(inconsistent(
                "both cells lie on the same side of the shared facet",
            ));
        }
        let [a, b]: [Vec<usize>; 2] = oriented.try_into().expect("two cells");
        Ok(TwoCellMesh {
            n,
            vertices,
            cells: [a, b],
        })
    }

    /// The reference simplex and its mirror image across the facet opposite the origin.
    pub fn reference(n: usize) -> Result<Self> {
        let t = Simplex::<Rational>::reference(n);
        let mut vertices = t.vertices().to_vec();
        vertices.push(vec![frac(2, n as i64); n]);
        let first: Vec<usize> = (0..=n).collect();
        let mut second = vec![n + 1];
        second.extend(1..=n);
        Self::new(n, vertices, [first, second])
    }

    /// Global labels of the shared facet, sorted.
    pub fn shared_facet(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.cells[0]
            .iter()
            .copied()
            .filter(|l| self.cells[1].contains(l))
            .collect();
        s.sort_unstable();
        s
    }

    /// Facet-frame label ↦ local label in `cell`.
    fn facet_to_cell(&self, cell: usize) -> Vec<(usize, usize)> {
        self.shared_facet()
            .iter()
            .enumerate()
            .map(|(j, g)| {
                (
                    j,
                    self.cells[cell]
                        .iter()
                        .position(|l| l == g)
                        .expect("shared vertex"),
                )
            })
            .collect()
    }

    fn cell_to_facet(&self, cell: usize) -> Vec<(usize, usize)> {
        self.facet_to_cell(cell)
            .into_iter()
            .map(|(j, l)| (l, j))
            .collect()
    }

    fn local_facet(&self, cell: usize) -> Face {
        let labels: Vec<usize> = self
            .facet_to_cell(cell)
            .into_iter()
            .map(|(_, l)| l)
            .collect();
        let mut sorted = labels;
        sorted.sort_unstable();
        Face::new(&sorted).expect("facet labels")
    }

    /// Extends a facet-frame form into `cell` and takes the trace back onto the facet.
    pub fn extend_and_trace(&self, w: &PolyForm, cell: usize) -> Result<PolyForm> {
        let local = w.relabel(&self.facet_to_cell(cell))?;
        let ext = dot_extend(&local, Face::full(self.n))?;
        ext.trace(self.local_facet(cell))?
            .relabel(&self.cell_to_facet(cell))
    }
}

/// Whether the listed points form a positively oriented simplex.
fn positive(pts: Vec<Vec<Rational>>) -> Result<bool> {
    match Simplex::new(pts, Orientation::Reject) {
        Ok(_) => Ok(true),
        Err(Error::NegativeOrientation) => Ok(false),
        Err(e) => Err(e),
    }
}

fn orient(vertices: &[Vec<Rational>], cell: &[usize]) -> Result<Vec<usize>> {
    let mut out = cell.to_vec();
    if !positive(out.iter().map(|&l| vertices[l].clone()).collect())? {
        let n = out.len() - 1;
        out.swap(n - 1, n);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoCellReport {
    pub mesh: TwoCellMesh,
    pub k: usize,
    pub r: u32,
    pub family: Family,
    pub shared_facet: Vec<usize>,
    /// Trace-free basis forms on the facet and its subfaces.
    pub facet_forms: usize,
    /// Forms on cell faces outside the facet.
    pub interior_forms: usize,
    pub mismatches: Vec<String>,
    pub nonzero_interior_traces: Vec<String>,
}

impl TwoCellReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.nonzero_interior_traces.is_empty()
    }
}

/// Extends every trace-free basis form of the shared facet (and its faces)
/// into both cells and compares the traces; forms living on faces off the
/// facet must have zero trace on it.
pub fn two_cell_continuity(
    mesh: &TwoCellMesh,
    k: usize,
    r: u32,
    family: Family,
) -> Result<TwoCellReport> {
    let n = mesh.n;
    if k > n {
        return Err(Error::InvalidInput(format!("{k}-forms in dimension {n}")));
    }
    let facet = Face::full(n - 1);
    let mut report = TwoCellReport {
        mesh: mesh.clone(),
        k,
        r,
        family,
        shared_facet: mesh.shared_facet(),
        facet_forms: 0,
        interior_forms: 0,
        mismatches: Vec::new(),
        nonzero_interior_traces: Vec::new(),
    };
    if k < n {
        for tau in facet.subfaces().into_iter().filter(|f| f.dim() >= k) {
            for w in trace_free_space(tau, family, r, k)?.basis() {
                report.facet_forms += 1;
                let sides = [mesh.extend_and_trace(&w, 0)?, mesh.extend_and_trace(&w, 1)?];
                let own = dot_extend(&w, facet)?;
                if sides[0] != sides[1] || sides[0] != own {
                    report
                        .mismatches
                        .push(format!("τ={tau} ω={w}: {} | {}", sides[0], sides[1]));
                }
            }
        }
    }
    let t = Face::full(n);
    for cell in 0..2 {
        let local_facet = mesh.local_facet(cell);
        for tau in t
            .subfaces()
            .into_iter()
            .filter(|f| f.dim() >= k && !local_facet.contains(*f))
        {
            for w in trace_free_space(tau, family, r, k)?.basis() {
                report.interior_forms += 1;
                if k < n {
                    let tr = dot_extend(&w, t)?.trace(local_facet)?;
                    if !tr.is_zero() {
                        report
                            .nonzero_interior_traces
                            .push(format!("cell {cell} τ={tau} ω={w}: {tr}"));
                    }
                }
            }
        }
    }
    Ok(report)
}
