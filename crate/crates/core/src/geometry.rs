//! Points, lines and planes of PG(3,q).
//!
//! Points are stored in canonical form: the first nonzero coordinate is 1.
//! Ids enumerate the classes W₀, W₁, W₂, W₃ in that order (the class of a
//! point is the position of its leading 1), and within a class the trailing
//! coordinates in lexicographic order of their element indices. Planes use
//! the same enumeration on their dual coordinates, so plane id `i` has the
//! dual vector of point id `i`.

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::quadric::MONOMIALS;

pub type Coords = [Elem; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub id: usize,
    pub coords: Coords,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Plane {
    pub id: usize,
    /// Canonical dual coordinates: the plane is Σ dᵢ xᵢ = 0.
    pub coords: Coords,
}

/// A line, held as its sorted point ids and the matching bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    ids: Vec<usize>,
    bits: PointSet,
}

impl Line {
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn points(&self) -> &PointSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.bits.contains(id)
    }

    /// Two distinct points that span the line (its two smallest ids).
    pub fn basis(&self) -> (usize, usize) {
        (self.ids[0], self.ids[1])
    }

    pub fn meets(&self, other: &Line) -> bool {
        !self.bits.is_disjoint(&other.bits)
    }
}

/// Scales `raw` so its first nonzero coordinate is 1.
pub fn normalize(field: &FieldSpec, raw: Coords) -> Result<Coords> {
    let lead = raw.iter().copied().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
    let s = field.inv(lead).expect("nonzero");
    Ok(raw.map(|c| field.mul(c, s)))
}

/// Bilinear pairing Σ aᵢ bᵢ between dual and point coordinates.
#[inline]
pub fn pairing(field: &FieldSpec, a: &Coords, b: &Coords) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// PG(3,q) with its point list, plane incidence bitsets and per-point
/// monomial values.
#[derive(Debug, Clone)]
pub struct Geometry {
    field: FieldSpec,
    points: Vec<Coords>,
    planes: Vec<PointSet>,
    monomials: Vec<[Elem; 10]>,
}

impl Geometry {
    pub fn new(field: FieldSpec) -> Self {
        let q = field.size();
        let mut points = Vec::with_capacity(q * q * q + q * q + q + 1);
        for lead in 0..4 {
            let free = 3 - lead;
            for n in 0..q.pow(free as u32) {
                let mut c = [Elem::ZERO; 4];
                c[lead] = Elem::ONE;
                let mut rest = n;
                for j in (lead + 1..4).rev() {
                    c[j] = Elem((rest % q) as u8);
                    rest /= q;
                }
                points.push(c);
            }
        }

        let planes = points
            .iter()
            .map(|d| {
                PointSet::from_ids(
                    points.len(),
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| pairing(&field, d, p).is_zero())
                        .map(|(i, _)| i),
                )
            })
            .collect();

        let monomials = points
            .iter()
            .map(|p| MONOMIALS.map(|(i, j)| field.mul(p[i], p[j])))
            .collect();

        Geometry {
            field,
            points,
            planes,
            monomials,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.size()
    }

    /// (q⁴ − 1)/(q − 1); also the number of planes.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_planes(&self) -> usize {
        self.planes.len()
    }

    pub fn coords(&self, id: usize) -> &Coords {
        &self.points[id]
    }

    pub fn point(&self, id: usize) -> ProjPoint {
        ProjPoint {
            id,
            coords: self.points[id],
        }
    }

    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        self.points
            .iter()
            .enumerate()
            .map(|(id, &coords)| ProjPoint { id, coords })
    }

    #[inline]
    pub(crate) fn monomials(&self, id: usize) -> &[Elem; 10] {
        &self.monomials[id]
    }

    /// Id of a point already in canonical form.
    pub fn id_of_canonical(&self, c: &Coords) -> usize {
        let q = self.q();
        let lead = c.iter().position(|x| !x.is_zero()).expect("canonical point");
        debug_assert_eq!(c[lead], Elem::ONE);
        let offset: usize = (0..lead).map(|j| q.pow(3 - j as u32)).sum();
        let tail = c[lead + 1..].iter().fold(0, |acc, x| acc * q + x.index());
        offset + tail
    }

    pub fn normalize(&self, raw: Coords) -> Result<ProjPoint> {
        let coords = normalize(&self.field, raw)?;
        Ok(ProjPoint {
            id: self.id_of_canonical(&coords),
            coords,
        })
    }

    /// All points of the full point set, as a bitset.
    pub fn all_points(&self) -> PointSet {
        PointSet::from_ids(self.num_points(), 0..self.num_points())
    }

    pub fn line_through(&self, p1: usize, p2: usize) -> Result<Line> {
        if p1 == p2 {
            return Err(Error::CoincidentPoints);
        }
        let f = &self.field;
        let (a, b) = (self.points[p1], self.points[p2]);
        let mut ids: Vec<usize> = f
            .elements()
            .map(|s| {
                let raw = [0, 1, 2, 3].map(|i| f.add(f.mul(s, a[i]), b[i]));
                self.id_of_canonical(&normalize(f, raw).expect("independent points"))
            })
            .collect();
        ids.push(p1);
        ids.sort_unstable();
        ids.dedup();
        debug_assert_eq!(ids.len(), self.q() + 1);
        Ok(self.line_from_sorted(ids))
    }

    fn line_from_sorted(&self, ids: Vec<usize>) -> Line {
        let bits = PointSet::from_ids(self.num_points(), ids.iter().copied());
        Line { ids, bits }
    }

    /// The line whose point set is exactly `set`, if `set` is a line.
    pub fn line_from_set(&self, set: &PointSet) -> Option<Line> {
        let mut it = set.iter();
        let (a, b) = (it.next()?, it.next()?);
        let line = self.line_through(a, b).ok()?;
        (line.points() == set).then_some(line)
    }

    /// Every line of PG(3,q) exactly once, ordered by its two smallest ids.
    pub fn lines(&self) -> Vec<Line> {
        let n = self.num_points();
        let mut out = Vec::new();
        for a in 0..n {
            let mut covered = PointSet::empty(n);
            for b in a + 1..n {
                if covered.contains(b) {
                    continue;
                }
                let line = self.line_through(a, b).expect("distinct");
                covered.union_with(line.points());
                if line.ids[0] == a && line.ids[1] == b {
                    out.push(line);
                }
            }
        }
        out
    }

    pub fn plane(&self, id: usize) -> Plane {
        Plane {
            id,
            coords: self.points[id],
        }
    }

    pub fn plane_from_coords(&self, raw: Coords) -> Result<Plane> {
        let p = self.normalize(raw)?;
        Ok(Plane {
            id: p.id,
            coords: p.coords,
        })
    }

    pub fn plane_points(&self, plane_id: usize) -> &PointSet {
        &self.planes[plane_id]
    }

    pub fn planes(&self) -> impl Iterator<Item = Plane> + '_ {
        (0..self.num_planes()).map(|id| self.plane(id))
    }

    pub fn plane_contains(&self, plane: &Plane, point: usize) -> bool {
        pairing(&self.field, &plane.coords, &self.points[point]).is_zero()
    }

    /// The q+1 planes containing `line`, in plane-id order.
    pub fn planes_through_line(&self, line: &Line) -> Vec<Plane> {
        (0..self.num_planes())
            .filter(|&h| line.points().is_subset(&self.planes[h]))
            .map(|h| self.plane(h))
            .collect()
    }

    /// Intersection line of two distinct planes.
    pub fn meet(&self, h1: usize, h2: usize) -> Result<Line> {
        if h1 == h2 {
            return Err(Error::CoincidentPoints);
        }
        let common = self.planes[h1].intersection(&self.planes[h2]);
        self.line_from_set(&common)
            .ok_or_else(|| Error::Internal(format!("planes {h1} and {h2} do not meet in a line")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use std::collections::HashSet;

    fn pg(t: u32) -> Geometry {
        Geometry::new(build_field(t).unwrap())
    }

    #[test]
    fn point_counts() {
        assert_eq!(pg(2).num_points(), 85);
        assert_eq!(pg(3).num_points(), 820);
    }

    #[test]
    fn enumeration_is_canonical_and_ids_match() {
        for t in [2, 3] {
            let g = pg(t);
            let mut seen = HashSet::new();
            for p in g.points() {
                assert_eq!(g.normalize(p.coords).unwrap(), p);
                assert_eq!(g.id_of_canonical(&p.coords), p.id);
                assert!(seen.insert(p.coords));
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let g = pg(2);
        let f = g.field();
        let omega = Elem(2);
        let omega2 = f.mul(omega, omega);
        let p = g.normalize([Elem::ZERO, omega, Elem::ONE, Elem::ZERO]).unwrap();
        assert_eq!(p.coords, [Elem::ZERO, Elem::ONE, omega2, Elem::ZERO]);
        let e0 = [Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO];
        assert_eq!(g.normalize(e0).unwrap().coords, e0);
        assert!(matches!(g.normalize([Elem::ZERO; 4]), Err(Error::ZeroVector)));

        let g9 = pg(3);
        let p = g9.normalize([Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem(2)]).unwrap();
        assert_eq!(p.coords, [Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE]);
    }

    #[test]
    fn lines_are_symmetric_and_sized() {
        let g = pg(2);
        assert!(matches!(g.line_through(3, 3), Err(Error::CoincidentPoints)));
        for (a, b) in [(0, 1), (5, 80), (84, 17)] {
            let l = g.line_through(a, b).unwrap();
            assert_eq!(l.len(), 5);
            assert_eq!(l, g.line_through(b, a).unwrap());
            // any two of its points regenerate it
            assert_eq!(l, g.line_through(l.ids()[2], l.ids()[4]).unwrap());
        }
    }

    #[test]
    fn line_count_by_pair_dedup() {
        // Brute force: dedup the lines of all point pairs by their point sets.
        let g = pg(2);
        let mut set = HashSet::new();
        for a in 0..g.num_points() {
            for b in a + 1..g.num_points() {
                set.insert(g.line_through(a, b).unwrap().ids().to_vec());
            }
        }
        assert_eq!(set.len(), 357);
        assert_eq!(g.lines().len(), 357);
    }

    #[test]
    fn planes_have_right_size_and_meet_in_lines() {
        let g = pg(2);
        for h in g.planes() {
            assert_eq!(g.plane_points(h.id).count(), 21);
            for p in g.plane_points(h.id).iter() {
                assert!(g.plane_contains(&h, p));
            }
        }
        for (a, b) in [(0, 1), (3, 70), (84, 40)] {
            assert_eq!(g.meet(a, b).unwrap().len(), 5);
        }
    }

    #[test]
    fn pencil_of_planes_covers_space() {
        let g = pg(2);
        let l = g.line_through(7, 60).unwrap();
        let pencil = g.planes_through_line(&l);
        assert_eq!(pencil.len(), 5);
        let mut union = PointSet::empty(g.num_points());
        for h in &pencil {
            assert!(l.points().is_subset(g.plane_points(h.id)));
            union.union_with(g.plane_points(h.id));
        }
        assert_eq!(union.count(), 85);
    }
}
