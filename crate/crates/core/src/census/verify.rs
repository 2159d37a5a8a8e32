//! Everything at once: table census, weight distribution, families, the
//! fourth/fifth weight check and the two-generator hyperbolic bound.

use serde::Serialize;

use super::{
    bounds, check_conjecture, count_formulas, enumerate_second_weight_families, enumerate_third_weight_family,
    exhaustive_census, stratified_census, verify_two_generator_hyperbolics, CensusReport, Check,
    StratifiedConfig, TwoGeneratorHyperbolicReport,
};
use crate::code::{full_weight_distribution, WeightDistribution};
use crate::error::Result;
use crate::surface::HermitianSurface;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    #[serde(flatten)]
    pub census: CensusReport,
    pub two_generator_hyperbolics: TwoGeneratorHyperbolicReport,
    pub weights: WeightDistribution,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.census.passed() && self.two_generator_hyperbolics.pass
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = self.census.failures();
        let h = &self.two_generator_hyperbolics;
        if !h.pass {
            match &h.witness {
                Some(w) => out.push(format!(
                    "two-generator hyperbolic bound {}: witness {} has |Q ∩ X| = {}",
                    h.bound, w.form, w.observed
                )),
                None => out.push(format!("two-generator hyperbolic bound {} violated", h.bound)),
            }
        }
        out
    }
}

fn weight_checks(dist: &WeightDistribution, census: &CensusReport, surface: &HermitianSurface) -> Vec<Check> {
    let t = u64::from(dist.t);
    let b = bounds(t);
    let cf = count_formulas(t);
    let q = u64::from(dist.q);
    let w = |i: usize| b.weights[i] as usize;
    let observed: Vec<u64> = dist.weights().iter().take(5).map(|&x| x as u64).collect();
    let odd: Vec<usize> = dist.weights().into_iter().filter(|w| w % 2 == 1).collect();

    let second_families = census.row(11).stats.count
        + census.row(6).subrow_count("line generator")
        + census.row(7).subrow_count("line tangent");
    let third_family = census.row(7).subrow_count("line secant");
    vec![
        Check::new(
            "direct encoding agrees with the census distribution",
            *dist == census.weight_distribution(surface),
            format!("{} weights encoded, {} from the census", dist.counts.len(), census.section_histogram().len()),
        ),
        Check::new(
            "all codewords counted",
            dist.total() == q.pow(10) - 1,
            format!("{} nonzero codewords, q^10 - 1 = {}", dist.total(), q.pow(10) - 1),
        ),
        Check::new(
            "five smallest weights",
            observed == b.weights,
            format!("observed {observed:?}, expected {:?}", b.weights),
        ),
        Check::new(
            "second-weight codeword count",
            dist.count(w(1)) == cf.second_count,
            format!("counts[{}] = {}, formula {}", w(1), dist.count(w(1)), cf.second_count),
        ),
        Check::new(
            "third-weight codeword count",
            dist.count(w(2)) == cf.third_count,
            format!("counts[{}] = {}, formula {}", w(2), dist.count(w(2)), cf.third_count),
        ),
        Check::new("even weights only", odd.is_empty(), format!("odd weights present: {odd:?}")),
        Check::new(
            "second-weight quadrics are exactly the three families",
            second_families * (q - 1) == dist.count(w(1)),
            format!(
                "(type 11 + type 6 on a generator + type 7 on a tangent line) = {second_families}, times q - 1 = {}",
                second_families * (q - 1)
            ),
        ),
        Check::new(
            "third-weight quadrics are exactly tangent/non-tangent pairs on a secant",
            third_family * (q - 1) == dist.count(w(2)),
            format!("type 7 on a secant = {third_family}, times q - 1 = {}", third_family * (q - 1)),
        ),
    ]
}

fn formula_checks(t: u64, families: &[super::FamilyCount]) -> Vec<Check> {
    let cf = count_formulas(t);
    let second: u64 = families.iter().filter(|f| f.weight_class == "second").map(|f| f.codewords).sum();
    let third: u64 = families.iter().filter(|f| f.weight_class == "third").map(|f| f.codewords).sum();
    vec![
        Check::new(
            "second-weight families give the closed-form count",
            second == cf.second_count,
            format!("constructed {second}, formula {}", cf.second_count),
        ),
        Check::new(
            "third-weight family gives the closed-form count",
            third == cf.third_count,
            format!("constructed {third}, formula {}", cf.third_count),
        ),
    ]
}

/// Exhaustive at t = 2, stratified otherwise. The fourth/fifth weight check
/// and the full distribution are only available at t = 2.
pub fn verify_all(surface: &HermitianSurface, config: &StratifiedConfig) -> Result<VerifyReport> {
    let t = surface.t();
    let (mut census, weights) = if t == 2 {
        let census = exhaustive_census(surface, config.shards)?;
        let dist = full_weight_distribution(surface, config.shards)?;
        (census, dist)
    } else {
        let (dist, census) = stratified_census(surface, config)?;
        (census, dist)
    };
    census.provenance.seed = Some(config.seed);

    let (mut families, distinct) = enumerate_second_weight_families(surface)?;
    families.push(enumerate_third_weight_family(surface)?);
    census.checks.push(distinct);
    census.checks.extend(formula_checks(u64::from(t), &families));
    census.families = families;

    if t == 2 {
        census.checks.extend(weight_checks(&weights, &census, surface));
        census.conjecture = Some(check_conjecture(surface, &census, &weights, config.shards)?);
    }
    let two_generator_hyperbolics = verify_two_generator_hyperbolics(&census);
    Ok(VerifyReport {
        census,
        two_generator_hyperbolics,
        weights,
    })
}
