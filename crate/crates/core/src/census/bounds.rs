//! Closed-form section sizes, weights and codeword counts.

use serde::Serialize;

/// The five largest section sizes |Q ∩ X| and the code weights they give.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundSet {
    pub t: u64,
    /// |X| = t⁵ + t³ + t² + 1.
    pub surface_size: u64,
    /// s, s₂, s₃, s₄, s₅ in decreasing order.
    pub sections: [u64; 5],
    /// |X| − sᵢ, increasing.
    pub weights: [u64; 5],
}

impl BoundSet {
    pub fn s(&self) -> u64 {
        self.sections[0]
    }
    pub fn s2(&self) -> u64 {
        self.sections[1]
    }
    pub fn s3(&self) -> u64 {
        self.sections[2]
    }
    pub fn s4(&self) -> u64 {
        self.sections[3]
    }
    pub fn s5(&self) -> u64 {
        self.sections[4]
    }

    /// Upper bound on elliptic sections: 2t³ + 2t + 2, capped by the q² + 1
    /// points of the quadric itself.
    pub fn elliptic_bound(&self) -> u64 {
        let t = self.t;
        (2 * t.pow(3) + 2 * t + 2).min(t.pow(4) + 1)
    }
}

pub fn surface_size(t: u64) -> u64 {
    t.pow(5) + t.pow(3) + t.pow(2) + 1
}

pub fn bounds(t: u64) -> BoundSet {
    let (t2, t3) = (t * t, t * t * t);
    let sections = [
        2 * t3 + 2 * t2 - t + 1,
        2 * t3 + t2 + 1,
        2 * t3 + t2 - t + 1,
        2 * t3 + 1,
        2 * t3 - t + 1,
    ];
    let n = surface_size(t);
    BoundSet {
        t,
        surface_size: n,
        sections,
        weights: sections.map(|s| n - s),
    }
}

/// Codeword counts of the second- and third-weight classes, with the
/// per-family projective quadric counts they are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountFormulas {
    pub t: u64,
    /// ½(t²−1)(t⁵+t³+t²+1)(3t²−t+1)t².
    pub second_count: u64,
    /// (t²−1)(t⁵+t³+t²+1)(t⁶−t⁵).
    pub third_count: u64,
    /// Hyperbolic quadrics through three skew generators: ½q²(qt+1)(q+1).
    pub n_q: u64,
    /// One tangent plane per point of X.
    pub tangent_planes: u64,
    /// Unordered pairs of tangent planes meeting in a generator.
    pub tangent_pairs_on_generator: u64,
    /// Tangent × non-tangent plane pairs meeting in a tangent line.
    pub mixed_pairs_on_tangent_line: u64,
    /// Tangent × non-tangent plane pairs meeting in a secant.
    pub mixed_pairs_on_secant: u64,
}

pub fn count_formulas(t: u64) -> CountFormulas {
    let q = t * t;
    let x = surface_size(t);
    let second_count = (t * t - 1) * x * (3 * t * t - t + 1) * t * t / 2;
    let third_count = (t * t - 1) * x * (t.pow(6) - t.pow(5));
    CountFormulas {
        t,
        second_count,
        third_count,
        n_q: q * q * (q * t + 1) * (q + 1) / 2,
        tangent_planes: x,
        tangent_pairs_on_generator: x * (t.pow(3) + t * t) / 2,
        mixed_pairs_on_tangent_line: x * (t.pow(4) - t.pow(3)),
        mixed_pairs_on_secant: x * (t.pow(6) - t.pow(5)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_t2_and_t3() {
        let b = bounds(2);
        assert_eq!(b.sections, [23, 21, 19, 17, 15]);
        assert_eq!(b.weights, [22, 24, 26, 28, 30]);
        assert_eq!(b.elliptic_bound(), 17);
        let b = bounds(3);
        assert_eq!(b.sections, [70, 64, 61, 55, 52]);
        assert_eq!(b.elliptic_bound(), 62);
    }

    #[test]
    fn ordering_and_weight_identities() {
        for t in 2..=9u64 {
            let b = bounds(t);
            assert!(b.sections.windows(2).all(|w| w[0] > w[1]));
            assert!(b.weights.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(b.weights[1], t.pow(5) - t.pow(3));
            assert_eq!(b.weights[2], t.pow(5) - t.pow(3) + t);
        }
    }

    #[test]
    fn count_formulas_at_t2_and_t3() {
        let c = count_formulas(2);
        assert_eq!((c.second_count, c.third_count, c.n_q), (2970, 4320, 360));
        assert_eq!(
            (c.tangent_pairs_on_generator, c.mixed_pairs_on_tangent_line, c.mixed_pairs_on_secant),
            (270, 360, 1440)
        );
        let c = count_formulas(3);
        assert_eq!((c.n_q, c.tangent_pairs_on_generator, c.mixed_pairs_on_tangent_line), (11340, 5040, 15120));
        assert_eq!(c.second_count, 252_000);
        assert_eq!(c.third_count, 1_088_640);
    }

    #[test]
    fn second_count_equals_family_sum() {
        for t in 2..=9u64 {
            let c = count_formulas(t);
            let fam = c.n_q + c.tangent_pairs_on_generator + c.mixed_pairs_on_tangent_line;
            assert_eq!(c.second_count, (t * t - 1) * fam);
            assert_eq!(c.third_count, (t * t - 1) * c.mixed_pairs_on_secant);
        }
    }
}
