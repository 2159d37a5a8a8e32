//! The functional code C₂(X): a quadratic form is encoded as its values at
//! the canonical representatives of the points of X, in point-id order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg;
use crate::quadric::QuadraticForm;
use crate::shard;
use crate::surface::HermitianSurface;

pub use crate::census::stratified::stratified_census;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<Elem>,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_zero()).count()
    }
}

pub fn encode(form: &QuadraticForm, surface: &HermitianSurface) -> Result<Codeword> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    let geom = surface.geometry();
    Ok(Codeword {
        symbols: surface
            .point_ids()
            .iter()
            .map(|&p| form.evaluate(geom, p))
            .collect(),
    })
}

/// Hamming weight of the codeword of `form`, without materializing it.
pub fn weight(form: &QuadraticForm, surface: &HermitianSurface) -> usize {
    let geom = surface.geometry();
    surface
        .point_ids()
        .iter()
        .filter(|&&p| !form.evaluate(geom, p).is_zero())
        .count()
}

/// Rows are the codewords of the ten monomials.
pub fn generator_matrix(surface: &HermitianSurface) -> Vec<Vec<Elem>> {
    (0..10)
        .map(|m| encode(&QuadraticForm::monomial(m), surface).expect("nonzero").symbols)
        .collect()
}

pub fn generator_rank(surface: &HermitianSurface) -> usize {
    linalg::rank(surface.geometry().field(), &generator_matrix(surface))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub t: u32,
    pub q: u32,
    /// Code length |X|.
    pub length: usize,
    pub exhaustive: bool,
    /// Weight → number of nonzero codewords.
    pub counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    /// Nonzero weights that occur, ascending.
    pub fn weights(&self) -> Vec<usize> {
        self.counts
            .iter()
            .filter(|(&w, &c)| w > 0 && c > 0)
            .map(|(&w, _)| w)
            .collect()
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.weights().first().copied()
    }

    /// Codewords of weight `w` up to scalars.
    pub fn projective_count(&self, weight: usize) -> u64 {
        self.count(weight) / u64::from(self.q - 1)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["weight", "codeword_count", "projective_count"])
            .map_err(csv_err)?;
        for (&weight, &count) in &self.counts {
            w.serialize((weight, count, count / u64::from(self.q - 1)))
                .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("ascii"))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

/// Exact weight distribution by encoding every projective form. Only t = 2
/// is feasible (349 525 projective forms); larger fields go through
/// [`stratified_census`].
pub fn full_weight_distribution(surface: &HermitianSurface, shards: usize) -> Result<WeightDistribution> {
    let t = surface.t();
    if t != 2 {
        return Err(Error::InvalidConfig(format!(
            "exhaustive weight distribution needs t = 2 (got t = {t}); use the stratified census"
        )));
    }
    let field = surface.geometry().field();
    let q = field.size();
    let n = QuadraticForm::projective_count(q);
    let partials = shard::map_shards(n, shards, |_, range| {
        let mut hist = vec![0u64; surface.len() + 1];
        for i in range {
            let form = QuadraticForm::projective_from_index(q, i);
            hist[weight(&form, surface)] += 1;
        }
        hist
    });
    let mut counts = BTreeMap::new();
    for hist in partials {
        for (w, c) in hist.into_iter().enumerate().filter(|&(_, c)| c > 0) {
            *counts.entry(w).or_insert(0) += c * (q as u64 - 1);
        }
    }
    Ok(WeightDistribution {
        t,
        q: q as u32,
        length: surface.len(),
        exhaustive: true,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn x4() -> &'static HermitianSurface {
        static S: OnceLock<HermitianSurface> = OnceLock::new();
        S.get_or_init(|| HermitianSurface::new(2).unwrap())
    }

    #[test]
    fn repeated_plane_weight() {
        let cw = encode(&QuadraticForm::monomial(0), x4()).unwrap();
        assert_eq!(cw.symbols.len(), 45);
        assert_eq!(cw.weight(), 36);
        assert!(matches!(encode(&QuadraticForm::default(), x4()), Err(Error::ZeroForm)));
    }

    #[test]
    fn generator_matrix_has_full_rank() {
        let m = generator_matrix(x4());
        assert_eq!((m.len(), m[0].len()), (10, 45));
        assert_eq!(generator_rank(x4()), 10);
        let s3 = HermitianSurface::new(3).unwrap();
        let m = generator_matrix(&s3);
        assert_eq!((m.len(), m[0].len()), (10, 280));
        assert_eq!(generator_rank(&s3), 10);
    }

    #[test]
    fn exhaustive_needs_t2() {
        let s3 = HermitianSurface::new(3).unwrap();
        assert!(matches!(full_weight_distribution(&s3, 1), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn csv_layout() {
        let d = WeightDistribution {
            t: 2,
            q: 4,
            length: 45,
            exhaustive: true,
            counts: [(22, 6), (24, 2970)].into_iter().collect(),
        };
        assert_eq!(
            d.to_csv().unwrap(),
            "weight,codeword_count,projective_count\n22,6,2\n24,2970,990\n"
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn weight_is_length_minus_section(c in proptest::array::uniform10(0u8..4), lambda in 1u8..4) {
            prop_assume!(c.iter().any(|&x| x != 0));
            let s = x4();
            let form = QuadraticForm::from_indices(c);
            let cw = encode(&form, s).unwrap();
            let section = s.section_size(&form.zero_set(s.geometry()));
            prop_assert_eq!(cw.weight(), 45 - section);
            prop_assert_eq!(weight(&form, s), cw.weight());
            let scaled = form.scale(s.geometry().field(), Elem(lambda));
            prop_assert_eq!(encode(&scaled, s).unwrap().weight(), cw.weight());
        }

        #[test]
        fn codewords_lie_in_row_space(c in proptest::array::uniform10(0u8..4)) {
            prop_assume!(c.iter().any(|&x| x != 0));
            let s = x4();
            let f = s.geometry().field();
            let g = generator_matrix(s);
            let form = QuadraticForm::from_indices(c);
            let cw = encode(&form, s).unwrap();
            for (j, &sym) in cw.symbols.iter().enumerate() {
                let combo = (0..10).fold(Elem::ZERO, |acc, m| f.add(acc, f.mul(form.coeffs[m], g[m][j])));
                prop_assert_eq!(combo, sym);
            }
        }
    }
}
