//! Fourth and fifth weights: are they |X| − s₄(t) and |X| − s₅(t), and
//! which quadrics attain them?

use std::collections::BTreeMap;

use serde::Serialize;

use super::{bounds, CensusReport};
use crate::code::WeightDistribution;
use crate::error::{Error, Result};
use crate::quadric::{classify_zero_set, QuadraticForm, QuadricKind};
use crate::shard;
use crate::surface::{HermitianSurface, LineClass};

#[derive(Debug, Clone, Serialize)]
pub struct Share {
    #[serde(rename = "type")]
    pub type_id: u8,
    pub variant: String,
    /// Projective quadrics in this bucket with the given section size.
    pub quadrics: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightClass {
    pub rank: usize,
    pub observed: Option<usize>,
    pub predicted: usize,
    pub matches: bool,
    pub codewords: u64,
    pub decomposition: Vec<Share>,
}

/// Elliptic quadrics whose section has size s₅(t), described by the line
/// through their points off X (when there are exactly two).
#[derive(Debug, Clone, Serialize)]
pub struct EllipticProfile {
    pub section: usize,
    pub quadrics: u64,
    /// Number of points of the quadric off X → quadric count.
    pub off_surface_points: BTreeMap<usize, u64>,
    /// Class of the line joining two off-surface points → quadric count.
    pub joining_line: BTreeMap<LineClass, u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub t: u32,
    /// The five smallest nonzero weights observed.
    pub smallest_weights: Vec<usize>,
    pub fourth: WeightClass,
    pub fifth: WeightClass,
    /// Fourth-weight quadrics are all non-tangent plane pairs on a tangent line.
    pub fourth_structure_as_stated: bool,
    /// Fifth-weight quadrics are non-tangent plane pairs on a secant, or elliptic.
    pub fifth_structure_as_stated: bool,
    pub elliptic_fifth: Option<EllipticProfile>,
    pub pass: bool,
    pub summary: String,
}

fn decomposition(report: &CensusReport, section: usize) -> Vec<Share> {
    let mut out = Vec::new();
    for row in &report.rows {
        if row.subrows.is_empty() {
            if let Some(&n) = row.stats.histogram.get(&section) {
                out.push(Share {
                    type_id: row.type_id,
                    variant: String::new(),
                    quadrics: n,
                });
            }
        }
        for sub in &row.subrows {
            if let Some(&n) = sub.stats.histogram.get(&section) {
                out.push(Share {
                    type_id: row.type_id,
                    variant: sub.variant.clone(),
                    quadrics: n,
                });
            }
        }
    }
    out
}

type EllipticPart = (u64, BTreeMap<usize, u64>, BTreeMap<LineClass, u64>);

fn elliptic_profile(surface: &HermitianSurface, section: usize, shards: usize) -> Result<EllipticProfile> {
    let geom = surface.geometry();
    let q = geom.q();
    let n = QuadraticForm::projective_count(q);
    let parts = shard::map_shards(n, shards, |_, range| -> Result<EllipticPart> {
        let mut count = 0;
        let mut off = BTreeMap::new();
        let mut joining = BTreeMap::new();
        for i in range {
            let form = QuadraticForm::projective_from_index(q, i);
            let z = form.zero_set(geom);
            if z.count() != q * q + 1 || surface.section_size(&z) != section {
                continue;
            }
            let class = classify_zero_set(&form, z, surface)?;
            if class.kind != QuadricKind::Elliptic {
                continue;
            }
            count += 1;
            let outside: Vec<usize> = class.zero_set.iter().filter(|&p| !surface.points().contains(p)).collect();
            *off.entry(outside.len()).or_insert(0) += 1;
            if let [a, b] = outside[..] {
                let lc = surface.classify_line(&geom.line_through(a, b)?)?;
                *joining.entry(lc).or_insert(0) += 1;
            }
        }
        Ok((count, off, joining))
    });
    let mut profile = EllipticProfile {
        section,
        quadrics: 0,
        off_surface_points: BTreeMap::new(),
        joining_line: BTreeMap::new(),
    };
    for p in parts {
        let (c, off, joining) = p?;
        profile.quadrics += c;
        for (k, v) in off {
            *profile.off_surface_points.entry(k).or_insert(0) += v;
        }
        for (k, v) in joining {
            *profile.joining_line.entry(k).or_insert(0) += v;
        }
    }
    Ok(profile)
}

/// Reads the fourth and fifth weights off an exhaustive distribution and
/// splits their quadrics by type using the census.
pub fn check_conjecture(
    surface: &HermitianSurface,
    census: &CensusReport,
    dist: &WeightDistribution,
    shards: usize,
) -> Result<ConjectureReport> {
    if !dist.exhaustive || census.mode != "exhaustive" {
        return Err(Error::InvalidConfig(
            "the fourth/fifth weight check needs an exhaustive distribution and census (t = 2)".into(),
        ));
    }
    let t = surface.t();
    let b = bounds(u64::from(t));
    let n = surface.len();
    let weights = dist.weights();
    let q = u64::from(dist.q);

    let class = |rank: usize| {
        let predicted = b.weights[rank - 1] as usize;
        let observed = weights.get(rank - 1).copied();
        let section = n - observed.unwrap_or(predicted);
        WeightClass {
            rank,
            observed,
            predicted,
            matches: observed == Some(predicted),
            codewords: observed.map_or(0, |w| dist.count(w)),
            decomposition: decomposition(census, section),
        }
    };
    let fourth = class(4);
    let fifth = class(5);

    let only = |wc: &WeightClass, allowed: &dyn Fn(&super::conjecture::Share) -> bool| {
        wc.decomposition.iter().all(allowed)
    };
    let fourth_structure_as_stated = only(&fourth, &|s| s.type_id == 8 && s.variant == "line tangent");
    let fifth_structure_as_stated = only(&fifth, &|s| (s.type_id == 8 && s.variant == "line secant") || s.type_id == 15);

    let consistent = |wc: &WeightClass| wc.decomposition.iter().map(|s| s.quadrics).sum::<u64>() * (q - 1) == wc.codewords;
    let elliptic_fifth = if fifth.decomposition.iter().any(|s| s.type_id == 15) {
        Some(elliptic_profile(surface, b.s5() as usize, shards)?)
    } else {
        None
    };

    let pass = fourth.matches && fifth.matches && consistent(&fourth) && consistent(&fifth);
    let summary = format!(
        "fourth weight {:?} (predicted {}), fifth weight {:?} (predicted {})",
        fourth.observed, fourth.predicted, fifth.observed, fifth.predicted
    );
    Ok(ConjectureReport {
        t,
        smallest_weights: weights.iter().take(5).copied().collect(),
        fourth,
        fifth,
        fourth_structure_as_stated,
        fifth_structure_as_stated,
        elliptic_fifth,
        pass,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::exhaustive_census;

    #[test]
    fn elliptic_profile_matches_census() {
        let s = HermitianSurface::new(2).unwrap();
        let census = exhaustive_census(&s, 2).unwrap();
        let row = census.row(15);
        let max = row.stats.max.unwrap();
        let p = elliptic_profile(&s, max, 2).unwrap();
        assert_eq!(p.quadrics, row.stats.histogram[&max]);
        // An elliptic quadric has q² + 1 = 17 points.
        assert_eq!(p.off_surface_points, BTreeMap::from([(17 - max, p.quadrics)]));
    }

    #[test]
    fn needs_exhaustive_input() {
        let s = HermitianSurface::new(2).unwrap();
        let census = exhaustive_census(&s, 1).unwrap();
        let mut dist = census.weight_distribution(&s);
        dist.exhaustive = false;
        assert!(matches!(check_conjecture(&s, &census, &dist, 1), Err(Error::InvalidConfig(_))));
    }
}
