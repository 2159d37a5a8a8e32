//! The non-degenerate Hermitian surface x₀^{t+1} + x₁^{t+1} + x₂^{t+1} + x₃^{t+1} = 0.

use serde::{Deserialize, Serialize};

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::field::{build_field, Elem};
use crate::geometry::{Geometry, Line, Plane, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineClass {
    /// Meets X in exactly one point.
    Tangent,
    /// Meets X in t+1 points.
    Secant,
    /// Contained in X.
    Generator,
}

impl LineClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LineClass::Tangent => "tangent",
            LineClass::Secant => "secant",
            LineClass::Generator => "generator",
        }
    }
}

#[derive(Debug, Clone)]
pub struct HermitianSurface {
    geom: Geometry,
    points: PointSet,
    ids: Vec<usize>,
    /// Point id → plane id of the tangent plane, for points of X.
    tangent_plane: Vec<Option<usize>>,
    tangent_planes: PointSet,
    generators: Vec<Line>,
    /// Point id → indices into `generators` of the lines through it.
    generators_through: Vec<Vec<usize>>,
}

impl HermitianSurface {
    pub fn new(t: u32) -> Result<Self> {
        Ok(Self::from_geometry(Geometry::new(build_field(t)?)))
    }

    pub fn from_geometry(geom: Geometry) -> Self {
        let f = geom.field();
        let n = geom.num_points();
        let ids: Vec<usize> = geom
            .points()
            .filter(|p| {
                p.coords
                    .iter()
                    .fold(Elem::ZERO, |acc, &c| f.add(acc, f.norm(c)))
                    .is_zero()
            })
            .map(|p| p.id)
            .collect();
        let points = PointSet::from_ids(n, ids.iter().copied());

        let mut tangent_plane = vec![None; n];
        let mut tangent_planes = PointSet::empty(n);
        for &id in &ids {
            let c = geom.coords(id).map(|x| f.conjugate(x));
            let h = geom.plane_from_coords(c).expect("nonzero").id;
            tangent_plane[id] = Some(h);
            tangent_planes.insert(h);
        }

        let mut s = HermitianSurface {
            geom,
            points,
            ids,
            tangent_plane,
            tangent_planes,
            generators: Vec::new(),
            generators_through: vec![Vec::new(); n],
        };
        s.generators = s.find_generators();
        for (gi, g) in s.generators.iter().enumerate() {
            for &p in g.ids() {
                s.generators_through[p].push(gi);
            }
        }
        s
    }

    /// Lines inside X. Every such line through a point P of X lies in the
    /// tangent plane at P, so it suffices to join P to the points of X
    /// in that plane.
    fn find_generators(&self) -> Vec<Line> {
        let mut out: Vec<Line> = Vec::new();
        for &a in &self.ids {
            let h = self.tangent_plane[a].expect("point of X");
            let candidates = self.geom.plane_points(h).intersection(&self.points);
            for b in candidates.iter().filter(|&b| b > a) {
                let line = self.geom.line_through(a, b).expect("distinct");
                if line.basis() == (a, b) && line.points().is_subset(&self.points) {
                    out.push(line);
                }
            }
        }
        out.sort_by(|x, y| x.ids().cmp(y.ids()));
        out
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geom
    }

    pub fn t(&self) -> u32 {
        self.geom.field().t()
    }

    /// The point set of X as a bitset over PG(3,q).
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Point ids of X in increasing order; this is the coordinate order of
    /// the code.
    pub fn point_ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p.id)
    }

    /// Section sizes t³+1 and t³+t²+1 of non-tangent and tangent planes.
    pub fn plane_section_sizes(&self) -> (usize, usize) {
        let t = self.t() as usize;
        (t.pow(3) + 1, t.pow(3) + t * t + 1)
    }

    /// The polar plane Σ pᵢ^t xᵢ = 0 of a point of X.
    pub fn tangent_plane_at(&self, p: &ProjPoint) -> Result<Plane> {
        let h = self
            .tangent_plane
            .get(p.id)
            .copied()
            .flatten()
            .ok_or_else(|| Error::NotOnSurface(format!("{:?}", p.coords)))?;
        Ok(self.geom.plane(h))
    }

    /// Tangency decided by section size, cross-checked with the polarity.
    pub fn is_tangent_plane(&self, plane: &Plane) -> Result<bool> {
        let size = self.geom.plane_points(plane.id).intersection_count(&self.points);
        let (non_tangent, tangent) = self.plane_section_sizes();
        let by_size = if size == tangent {
            true
        } else if size == non_tangent {
            false
        } else {
            return Err(Error::Internal(format!(
                "plane {:?} meets X in {size} points",
                plane.coords
            )));
        };
        if by_size != self.tangent_planes.contains(plane.id) {
            return Err(Error::Internal(format!(
                "plane {:?}: section size and polarity disagree on tangency",
                plane.coords
            )));
        }
        Ok(by_size)
    }

    /// Tangency by plane id, without the cross-check. For hot loops.
    #[inline]
    pub fn is_tangent_plane_id(&self, plane_id: usize) -> bool {
        self.tangent_planes.contains(plane_id)
    }

    pub fn tangent_plane_ids(&self) -> &PointSet {
        &self.tangent_planes
    }

    pub fn classify_line(&self, line: &Line) -> Result<LineClass> {
        let t = self.t() as usize;
        match line.points().intersection_count(&self.points) {
            1 => Ok(LineClass::Tangent),
            n if n == t + 1 => Ok(LineClass::Secant),
            n if n == t * t + 1 => Ok(LineClass::Generator),
            n => Err(Error::Internal(format!(
                "line {:?} meets X in {n} points",
                line.ids()
            ))),
        }
    }

    pub fn generators(&self) -> &[Line] {
        &self.generators
    }

    /// Indices into [`Self::generators`] of the generators through a point.
    pub fn generators_through(&self, point: usize) -> &[usize] {
        &self.generators_through[point]
    }

    /// Generators whose points all lie in `set`.
    pub fn generators_in(&self, set: &PointSet) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| self.generators[g].points().is_subset(set))
            .collect()
    }

    pub fn section_size(&self, set: &PointSet) -> usize {
        set.intersection_count(&self.points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &HermitianSurface, c: [u8; 4]) -> ProjPoint {
        s.geometry().normalize(c.map(Elem)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let s = HermitianSurface::new(2).unwrap();
        assert!(s.contains(&pt(&s, [0, 1, 1, 0])));
        assert!(!s.contains(&pt(&s, [1, 0, 0, 0])));
        assert_eq!(s.len(), 45);
    }

    #[test]
    fn tangent_plane_examples() {
        let s = HermitianSurface::new(2).unwrap();
        let p = pt(&s, [1, 1, 0, 0]);
        let h = s.tangent_plane_at(&p).unwrap();
        assert_eq!(h.coords, [1, 1, 0, 0].map(Elem));
        assert_eq!(s.geometry().plane_points(h.id).intersection_count(s.points()), 13);
        assert!(s.is_tangent_plane(&h).unwrap());
        let x0 = s.geometry().plane(s.geometry().id_of_canonical(&[1, 0, 0, 0].map(Elem)));
        assert!(!s.is_tangent_plane(&x0).unwrap());
        assert!(matches!(
            s.tangent_plane_at(&pt(&s, [1, 0, 0, 0])),
            Err(Error::NotOnSurface(_))
        ));
    }

    #[test]
    fn every_point_on_its_tangent_plane_and_polarity_injective() {
        for t in [2, 3] {
            let s = HermitianSurface::new(t).unwrap();
            let mut planes = std::collections::HashSet::new();
            for &id in s.point_ids() {
                let p = s.geometry().point(id);
                let h = s.tangent_plane_at(&p).unwrap();
                assert!(s.geometry().plane_contains(&h, id));
                planes.insert(h.id);
            }
            assert_eq!(planes.len(), s.len());
            let tangent = s
                .geometry()
                .planes()
                .filter(|h| s.is_tangent_plane(h).unwrap())
                .count();
            assert_eq!(tangent, s.len());
        }
    }

    #[test]
    fn line_examples() {
        let s = HermitianSurface::new(2).unwrap();
        let g = s.geometry();
        let l = g
            .line_through(pt(&s, [0, 1, 1, 0]).id, pt(&s, [1, 0, 0, 1]).id)
            .unwrap();
        assert_eq!(s.classify_line(&l).unwrap(), LineClass::Generator);

        let l = g
            .line_through(pt(&s, [0, 0, 1, 0]).id, pt(&s, [0, 0, 0, 1]).id)
            .unwrap();
        assert_eq!(s.classify_line(&l).unwrap(), LineClass::Secant);
        // the three points (0:0:1:b) with b³ = 1
        let on_x: Vec<_> = l.ids().iter().filter(|&&i| s.points().contains(i)).collect();
        assert_eq!(on_x.len(), 3);
        for &&i in &on_x {
            let c = g.coords(i);
            assert_eq!(c[2], Elem::ONE);
            assert_eq!(g.field().pow(c[3], 3), Elem::ONE);
        }
    }

    #[test]
    fn generators_match_exhaustive_line_scan() {
        for (t, expected) in [(2, 27), (3, 112)] {
            let s = HermitianSurface::new(t).unwrap();
            let scan: Vec<Line> = s
                .geometry()
                .lines()
                .into_iter()
                .filter(|l| s.classify_line(l).unwrap() == LineClass::Generator)
                .collect();
            assert_eq!(scan.len(), expected);
            let mut listed = s.generators().to_vec();
            let mut scanned = scan;
            listed.sort_by(|a, b| a.ids().cmp(b.ids()));
            scanned.sort_by(|a, b| a.ids().cmp(b.ids()));
            assert_eq!(listed, scanned);
            for &p in s.point_ids() {
                assert_eq!(s.generators_through(p).len(), t as usize + 1);
            }
        }
    }

    #[test]
    fn tangent_sections_hold_generators_through_the_pole() {
        let s = HermitianSurface::new(2).unwrap();
        let g = s.geometry();
        for h in g.planes() {
            let inside = s.generators_in(g.plane_points(h.id));
            if s.is_tangent_plane_id(h.id) {
                assert_eq!(inside.len(), 3);
                let pole = (0..g.num_points())
                    .find(|&p| s.points().contains(p) && s.tangent_plane_at(&g.point(p)).unwrap().id == h.id)
                    .unwrap();
                for gi in inside {
                    assert!(s.generators()[gi].contains(pole));
                }
            } else {
                assert!(inside.is_empty());
            }
        }
    }
}
