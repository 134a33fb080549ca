//! Certified configuration shapes consumed by the weight-3 maps.

use crate::error::{EngineError, Result};
use crate::geom::{determinant, line_through, meet_lines, rank, ProjectivePoint};
use crate::scalar::FieldScalar;

/// Coincidence and collinearity profile of six points in P².
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegeneracyProfile {
    pub coincidences: Vec<(usize, usize)>,
    pub collinear_triples: Vec<[usize; 3]>,
    pub four_on_line: bool,
}

impl DegeneracyProfile {
    pub fn is_generic(&self) -> bool {
        self.coincidences.is_empty() && self.collinear_triples.is_empty()
    }
}

/// Six points in P² with their cached degeneracy profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneConfig6 {
    points: Vec<ProjectivePoint>,
    profile: DegeneracyProfile,
}

impl PlaneConfig6 {
    pub fn new(points: Vec<ProjectivePoint>) -> Result<Self> {
        if points.len() != 6 {
            return Err(EngineError::Shape(format!(
                "plane configuration needs 6 points, got {}",
                points.len()
            )));
        }
        for p in &points {
            if p.dim() != 2 {
                return Err(EngineError::Shape("plane configuration lives in P²".into()));
            }
        }
        let profile = profile_of(&points);
        Ok(PlaneConfig6 { points, profile })
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn profile(&self) -> &DegeneracyProfile {
        &self.profile
    }

    /// Determinant of the canonical coordinates of three of the six points.
    pub fn det3(&self, i: usize, j: usize, k: usize) -> FieldScalar {
        let rows = vec![
            self.points[i].coords().to_vec(),
            self.points[j].coords().to_vec(),
            self.points[k].coords().to_vec(),
        ];
        determinant(&rows).expect("3x3")
    }
}

fn profile_of(points: &[ProjectivePoint]) -> DegeneracyProfile {
    let mut profile = DegeneracyProfile::default();
    for i in 0..6 {
        for j in (i + 1)..6 {
            if points[i] == points[j] {
                profile.coincidences.push((i, j));
            }
        }
    }
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                let rows = vec![
                    points[i].coords().to_vec(),
                    points[j].coords().to_vec(),
                    points[k].coords().to_vec(),
                ];
                if determinant(&rows).map(|d| d.is_zero()).unwrap_or(true) {
                    profile.collinear_triples.push([i, j, k]);
                }
            }
        }
    }
    // Four on a line: some line supports two collinear triples sharing a pair.
    'outer: for a in 0..profile.collinear_triples.len() {
        for b in (a + 1)..profile.collinear_triples.len() {
            let ta = profile.collinear_triples[a];
            let tb = profile.collinear_triples[b];
            let shared = ta.iter().filter(|i| tb.contains(i)).count();
            if shared >= 2 {
                profile.four_on_line = true;
                break 'outer;
            }
        }
    }
    profile
}

/// Six distinct collinear points grouped (x₁,x₂,x₃; y₁,y₂,y₃).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineConfig33 {
    pub x: [ProjectivePoint; 3],
    pub y: [ProjectivePoint; 3],
}

impl LineConfig33 {
    pub fn new(x: [ProjectivePoint; 3], y: [ProjectivePoint; 3]) -> Result<Self> {
        let all: Vec<&ProjectivePoint> = x.iter().chain(y.iter()).collect();
        for i in 0..6 {
            for j in (i + 1)..6 {
                if all[i] == all[j] {
                    return Err(EngineError::Degenerate(format!(
                        "line configuration has coincident points (slots {i} and {j})"
                    )));
                }
            }
        }
        let rows: Vec<Vec<FieldScalar>> = all.iter().map(|p| p.coords().to_vec()).collect();
        if rank(&rows) > 2 {
            return Err(EngineError::Degenerate(
                "line configuration points are not collinear".into(),
            ));
        }
        Ok(LineConfig33 { x, y })
    }

    pub fn point(&self, slot: usize) -> &ProjectivePoint {
        if slot < 3 {
            &self.x[slot]
        } else {
            &self.y[slot - 3]
        }
    }
}

/// The correspondence between a plane configuration with a collinear triple
/// in slots 0,1,2 and 3+3 points on that line: the off-line triple is traded
/// for the cuts of its connecting lines, nₖ = (line through the other two)
/// ∩ L. Coincidences between the x-triple and the cuts can occur for
/// degenerate inputs; this variant leaves them to the caller.
pub fn line_correspondence_raw(
    points: &[ProjectivePoint],
) -> Result<([ProjectivePoint; 3], [ProjectivePoint; 3])> {
    if points.len() != 6 {
        return Err(EngineError::Shape("six points expected".into()));
    }
    let line = line_through(&points[0], &points[1])?;
    let rows = vec![
        points[0].coords().to_vec(),
        points[1].coords().to_vec(),
        points[2].coords().to_vec(),
    ];
    if !determinant(&rows)?.is_zero() {
        return Err(EngineError::Degenerate(
            "slots 0,1,2 are expected to be collinear".into(),
        ));
    }
    let x = [points[0].clone(), points[1].clone(), points[2].clone()];
    let mut n = Vec::with_capacity(3);
    for k in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&t| t != k).map(|t| 3 + t).collect();
        let joining = line_through(&points[others[0]], &points[others[1]])?;
        n.push(meet_lines(&joining, &line)?);
    }
    Ok((x, [n[0].clone(), n[1].clone(), n[2].clone()]))
}

/// Strict form of the collinear correspondence, certifying distinctness.
pub fn line_config_from_degenerate_plane(points: &[ProjectivePoint]) -> Result<LineConfig33> {
    let (x, n) = line_correspondence_raw(points)?;
    LineConfig33::new(x, n)
}
