//! Census for fields where exhausting all (q¹⁰−1)/(q−1) forms is out of
//! reach: quadrics of rank 1 and 2 are enumerated completely from their
//! geometric parameters, quadrics of rank 3 and 4 are sampled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    bounds, two_tangent_planes_never_meet_in_tangent_line, CensusReport, Check, FieldInfo, Mode,
    Provenance, Stratum, Tally,
};
use crate::code::WeightDistribution;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::geometry::Line;
use crate::quadric::{classify, QuadraticForm};
use crate::shard;
use crate::surface::HermitianSurface;

pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x5EED_2005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StratifiedConfig {
    pub samples: u64,
    pub seed: u64,
    pub shards: usize,
}

impl Default for StratifiedConfig {
    fn default() -> Self {
        StratifiedConfig {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            shards: 8,
        }
    }
}

/// Monic binary forms u² + b·uv + c·v² without a root, i.e. the
/// irreducible ones. There are (q² − q)/2 of them.
pub fn irreducible_binary_forms(surface: &HermitianSurface) -> Vec<(Elem, Elem)> {
    let f = surface.geometry().field();
    let mut out = Vec::new();
    for b in f.elements() {
        for c in f.elements() {
            let has_root = f
                .elements()
                .any(|z| f.add(f.add(f.mul(z, z), f.mul(b, z)), c).is_zero());
            if !has_root {
                out.push((b, c));
            }
        }
    }
    out
}

/// The rank-2 form L₁² + b·L₁L₂ + c·L₂² vanishing exactly on `line`, where
/// L₁, L₂ are the first two planes through the line.
pub fn line_form(surface: &HermitianSurface, line: &Line, (b, c): (Elem, Elem)) -> QuadraticForm {
    let geom = surface.geometry();
    let f = geom.field();
    let pencil = geom.planes_through_line(line);
    let (l1, l2) = (pencil[0].coords, pencil[1].coords);
    QuadraticForm::product(f, &l1, &l1)
        .add(f, &QuadraticForm::product(f, &l1, &l2).scale(f, b))
        .add(f, &QuadraticForm::product(f, &l2, &l2).scale(f, c))
}

fn merge_all(t: u32, parts: Vec<Result<Tally>>) -> Result<Tally> {
    let mut tally = Tally::new(t);
    for p in parts {
        tally.merge(p?);
    }
    Ok(tally)
}

/// Every repeated plane L².
fn repeated_planes(surface: &HermitianSurface, shards: usize) -> Result<Tally> {
    let geom = surface.geometry();
    let f = geom.field();
    let n = geom.num_planes() as u64;
    let parts = shard::map_shards(n, shards, |_, range| {
        let mut tally = Tally::new(surface.t());
        for h in range {
            let d = geom.plane(h as usize).coords;
            let form = QuadraticForm::product(f, &d, &d).projective(f);
            tally.record(&classify(&form, surface)?, &form, h);
        }
        Ok(tally)
    });
    merge_all(surface.t(), parts)
}

/// Every rank-2 form whose zero set is a single line.
fn lines(surface: &HermitianSurface, shards: usize) -> Result<(Tally, u64)> {
    let lines = surface.geometry().lines();
    let binary = irreducible_binary_forms(surface);
    let f = surface.geometry().field();
    let per_line = binary.len() as u64;
    let parts = shard::map_shards(lines.len() as u64, shards, |_, range| {
        let mut tally = Tally::new(surface.t());
        for li in range {
            for (k, &bc) in binary.iter().enumerate() {
                let form = line_form(surface, &lines[li as usize], bc).projective(f);
                tally.record(&classify(&form, surface)?, &form, li * per_line + k as u64);
            }
        }
        Ok(tally)
    });
    Ok((merge_all(surface.t(), parts)?, lines.len() as u64 * per_line))
}

/// Every unordered pair of distinct planes L₁·L₂.
fn plane_pairs(surface: &HermitianSurface, shards: usize) -> Result<Tally> {
    let geom = surface.geometry();
    let f = geom.field();
    let n = geom.num_planes() as u64;
    let parts = shard::map_shards(n, shards, |_, range| {
        let mut tally = Tally::new(surface.t());
        for i in range {
            let a = geom.plane(i as usize).coords;
            for j in i + 1..n {
                let b = geom.plane(j as usize).coords;
                let form = QuadraticForm::product(f, &a, &b).projective(f);
                tally.record(&classify(&form, surface)?, &form, i * n + j);
            }
        }
        Ok(tally)
    });
    merge_all(surface.t(), parts)
}

/// Uniformly random nonzero forms, seeded per shard so the draw does not
/// depend on thread scheduling.
fn sampled(surface: &HermitianSurface, config: &StratifiedConfig) -> Result<Tally> {
    let geom = surface.geometry();
    let f = geom.field();
    let q = f.size() as u8;
    let parts = shard::map_shards(config.samples, config.shards, |s, range| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(s as u64);
        let mut tally = Tally::new(surface.t());
        let mut zero = crate::PointSet::empty(geom.num_points());
        for i in range {
            let form = loop {
                let c: [u8; 10] = std::array::from_fn(|_| rng.gen_range(0..q));
                let form = QuadraticForm::from_indices(c);
                if !form.is_zero() {
                    break form.projective(f);
                }
            };
            form.zero_set_into(geom, &mut zero);
            let class = crate::quadric::classify_zero_set(&form, zero.clone(), surface)?;
            tally.record(&class, &form, i);
        }
        Ok(tally)
    });
    merge_all(surface.t(), parts)
}

/// Exact strata for ranks 1–2, seeded sampling for ranks 3–4.
///
/// The returned weight distribution covers the exact strata only.
pub fn stratified_census(
    surface: &HermitianSurface,
    config: &StratifiedConfig,
) -> Result<(WeightDistribution, CensusReport)> {
    if config.samples == 0 {
        return Err(Error::InvalidConfig("sample size must be positive".into()));
    }
    if config.shards == 0 {
        return Err(Error::InvalidConfig("shard count must be positive".into()));
    }
    let t = surface.t();
    let geom = surface.geometry();
    let b = bounds(u64::from(t));
    let n = geom.num_planes() as u64;

    let mut exact = repeated_planes(surface, config.shards)?;
    let (line_tally, line_forms) = lines(surface, config.shards)?;
    exact.merge(line_tally);
    exact.merge(plane_pairs(surface, config.shards)?);
    let random = sampled(surface, config)?;

    let mut rows = exact.rows(1..=8, Mode::Exact);
    rows.extend(random.rows(9..=15, Mode::Sampled));

    // Samples of rank ≤ 2 are held to the same expectations as the exact
    // strata; they only feed this check.
    let low = random.rows(1..=8, Mode::Sampled);
    let low_count: u64 = low.iter().map(|r| r.stats.count).sum();
    let low_ok = low.iter().all(|r| r.pass());

    let all_max = exact
        .section_histogram()
        .keys()
        .chain(random.section_histogram().keys())
        .max()
        .copied()
        .unwrap_or(0);
    let elliptic = &rows[14];
    let elliptic_max = elliptic.stats.max.unwrap_or(0);
    let checks = vec![
        Check::new(
            "exact strata sizes",
            exact.total() == n + line_forms + n * (n - 1) / 2,
            format!("{n} repeated planes, {line_forms} line forms, {} plane pairs", n * (n - 1) / 2),
        ),
        Check::new(
            "every section within the minimum-distance bound",
            all_max as u64 <= b.s(),
            format!("max |Q ∩ X| = {all_max}, s = {}", b.s()),
        ),
        Check::new(
            "sampled low-rank forms match the exact strata expectations",
            low_ok,
            format!("{low_count} sampled forms of rank <= 2"),
        ),
        Check::new(
            "sampled elliptic sections within the elliptic bound",
            elliptic_max as u64 <= b.elliptic_bound(),
            format!(
                "max elliptic |Q ∩ X| = {elliptic_max} over {} samples; bound {}, s3 = {}",
                elliptic.stats.count,
                b.elliptic_bound(),
                b.s3()
            ),
        ),
        two_tangent_planes_never_meet_in_tangent_line(&rows),
    ];

    let report = CensusReport {
        field: FieldInfo::of(surface),
        mode: "stratified",
        strata: vec![
            Stratum {
                name: "repeated planes",
                mode: Mode::Exact,
                forms: n,
            },
            Stratum {
                name: "lines (conjugate plane pairs)",
                mode: Mode::Exact,
                forms: line_forms,
            },
            Stratum {
                name: "pairs of distinct planes",
                mode: Mode::Exact,
                forms: n * (n - 1) / 2,
            },
            Stratum {
                name: "uniform random forms",
                mode: Mode::Sampled,
                forms: config.samples,
            },
        ],
        rows,
        checks,
        families: Vec::new(),
        conjecture: None,
        provenance: Provenance {
            seed: Some(config.seed),
            shards: config.shards,
            samples: Some(config.samples),
        },
    };
    let dist = report.weight_distribution(surface);
    Ok((WeightDistribution { exhaustive: false, ..dist }, report))
}

/// Every type from uniform random forms alone; no exact strata. Works for
/// any t, including t = 2 as a cross-check of the exhaustive census.
pub fn sampled_census(surface: &HermitianSurface, config: &StratifiedConfig) -> Result<CensusReport> {
    if config.samples == 0 {
        return Err(Error::InvalidConfig("sample size must be positive".into()));
    }
    if config.shards == 0 {
        return Err(Error::InvalidConfig("shard count must be positive".into()));
    }
    let b = bounds(u64::from(surface.t()));
    let random = sampled(surface, config)?;
    let rows = random.rows(1..=15, Mode::Sampled);
    let max = random.section_histogram().keys().next_back().copied().unwrap_or(0);
    let elliptic_max = rows[14].stats.max.unwrap_or(0);
    let checks = vec![
        Check::new(
            "every section within the minimum-distance bound",
            max as u64 <= b.s(),
            format!("max |Q ∩ X| = {max}, s = {}", b.s()),
        ),
        Check::new(
            "sampled elliptic sections within the elliptic bound",
            elliptic_max as u64 <= b.elliptic_bound(),
            format!("max elliptic |Q ∩ X| = {elliptic_max}; bound {}", b.elliptic_bound()),
        ),
        two_tangent_planes_never_meet_in_tangent_line(&rows),
    ];
    Ok(CensusReport {
        field: FieldInfo::of(surface),
        mode: "sample",
        strata: vec![Stratum {
            name: "uniform random forms",
            mode: Mode::Sampled,
            forms: config.samples,
        }],
        rows,
        checks,
        families: Vec::new(),
        conjecture: None,
        provenance: Provenance {
            seed: Some(config.seed),
            shards: config.shards,
            samples: Some(config.samples),
        },
    })
}
