//! Quadratic forms on PG(3,q) and the fifteen-way classification of their
//! zero sets relative to the Hermitian surface.
//!
//! Rank is read off the zero set rather than a Gram matrix, because the
//! symmetric-matrix rank is not meaningful in characteristic 2. The six
//! possible point counts
//!
//! | zero set                 | count        |
//! |--------------------------|--------------|
//! | conjugate-plane pair     | q+1          |
//! | elliptic quadric         | q²+1         |
//! | repeated plane / cone    | q²+q+1       |
//! | hyperbolic quadric       | (q+1)²       |
//! | pair of distinct planes  | 2q²+q+1      |
//!
//! are pairwise distinct for q ≥ 2; the plane and the cone are separated by
//! coplanarity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::geometry::{Coords, Geometry, Line, Plane};
use crate::linalg;
use crate::surface::{HermitianSurface, LineClass};

/// Monomial basis xᵢxⱼ, i ≤ j, in coefficient order.
pub const MONOMIALS: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadraticForm {
    pub coeffs: [Elem; 10],
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, (i, j)) in self.coeffs.iter().zip(MONOMIALS) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c != Elem::ONE {
                write!(f, "[{c}]")?;
            }
            if i == j {
                write!(f, "x{i}^2")?;
            } else {
                write!(f, "x{i}x{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl QuadraticForm {
    pub fn new(coeffs: [Elem; 10]) -> Self {
        QuadraticForm { coeffs }
    }

    pub fn from_indices(c: [u8; 10]) -> Self {
        QuadraticForm { coeffs: c.map(Elem) }
    }

    /// The single monomial `MONOMIALS[m]`.
    pub fn monomial(m: usize) -> Self {
        let mut coeffs = [Elem::ZERO; 10];
        coeffs[m] = Elem::ONE;
        QuadraticForm { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Product of the linear forms Σ aᵢxᵢ and Σ bᵢxᵢ.
    pub fn product(f: &FieldSpec, a: &Coords, b: &Coords) -> Self {
        let coeffs = MONOMIALS.map(|(i, j)| {
            if i == j {
                f.mul(a[i], b[i])
            } else {
                f.add(f.mul(a[i], b[j]), f.mul(a[j], b[i]))
            }
        });
        QuadraticForm { coeffs }
    }

    pub fn scale(&self, f: &FieldSpec, s: Elem) -> Self {
        QuadraticForm {
            coeffs: self.coeffs.map(|c| f.mul(c, s)),
        }
    }

    pub fn add(&self, f: &FieldSpec, other: &Self) -> Self {
        let mut coeffs = self.coeffs;
        for (c, o) in coeffs.iter_mut().zip(other.coeffs) {
            *c = f.add(*c, o);
        }
        QuadraticForm { coeffs }
    }

    /// The scalar multiple whose first nonzero coefficient is 1.
    pub fn projective(&self, f: &FieldSpec) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(&lead) => self.scale(f, f.inv(lead).expect("nonzero")),
            None => *self,
        }
    }

    /// Number of projective forms: (q¹⁰ − 1)/(q − 1).
    pub fn projective_count(q: usize) -> u64 {
        let q = q as u64;
        (q.pow(10) - 1) / (q - 1)
    }

    /// The `index`-th projective form. Forms are ordered by the position of
    /// the leading 1 (earliest first), then by the trailing coefficients read
    /// as a base-q number.
    pub fn projective_from_index(q: usize, index: u64) -> Self {
        let qq = q as u64;
        let mut rest = index;
        for lead in 0..10 {
            let block = qq.pow(9 - lead as u32);
            if rest < block {
                let mut coeffs = [Elem::ZERO; 10];
                coeffs[lead] = Elem::ONE;
                for k in (lead + 1..10).rev() {
                    coeffs[k] = Elem((rest % qq) as u8);
                    rest /= qq;
                }
                return QuadraticForm { coeffs };
            }
            rest -= block;
        }
        panic!("projective form index {index} out of range for q = {q}");
    }

    /// Evaluation at arbitrary coordinates (no normalization applied).
    pub fn evaluate_coords(&self, f: &FieldSpec, x: &Coords) -> Elem {
        self.coeffs
            .iter()
            .zip(MONOMIALS)
            .fold(Elem::ZERO, |acc, (&c, (i, j))| {
                f.add(acc, f.mul(c, f.mul(x[i], x[j])))
            })
    }

    /// Evaluation at the canonical representative of point `id`.
    #[inline]
    pub fn evaluate(&self, geom: &Geometry, id: usize) -> Elem {
        let f = geom.field();
        let m = geom.monomials(id);
        let mut acc = Elem::ZERO;
        for k in 0..10 {
            if !self.coeffs[k].is_zero() {
                acc = f.add(acc, f.mul(self.coeffs[k], m[k]));
            }
        }
        acc
    }

    pub fn zero_set(&self, geom: &Geometry) -> PointSet {
        let mut out = PointSet::empty(geom.num_points());
        self.zero_set_into(geom, &mut out);
        out
    }

    /// Writes the zero set into a caller-owned buffer.
    pub fn zero_set_into(&self, geom: &Geometry, out: &mut PointSet) {
        out.clear();
        let f = geom.field();
        let q = f.size();
        let (add, mul) = (f.add_table(), f.mul_table());
        let mut terms = [(0usize, 0usize); 10];
        let mut nt = 0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms[nt] = (k, c.index() * q);
                nt += 1;
            }
        }
        let terms = &terms[..nt];
        for id in 0..geom.num_points() {
            let m = geom.monomials(id);
            let mut acc = 0usize;
            for &(k, row) in terms {
                acc = add[acc * q + mul[row + m[k].index()] as usize] as usize;
            }
            if acc == 0 {
                out.insert(id);
            }
        }
    }

    /// The unique projective form vanishing on `points`, if the 10-column
    /// evaluation system has a one-dimensional kernel.
    pub fn through_points(geom: &Geometry, points: impl IntoIterator<Item = usize>) -> Option<Self> {
        let rows: Vec<Vec<Elem>> = points
            .into_iter()
            .map(|p| geom.monomials(p).to_vec())
            .collect();
        let ker = linalg::nullspace(geom.field(), &rows, 10);
        (ker.len() == 1).then(|| {
            let mut coeffs = [Elem::ZERO; 10];
            coeffs.copy_from_slice(&ker[0]);
            QuadraticForm { coeffs }.projective(geom.field())
        })
    }

    /// Matrix of the polar bilinear form B(x,y) = Q(x+y) − Q(x) − Q(y).
    fn polar_matrix(&self, f: &FieldSpec) -> [[Elem; 4]; 4] {
        let mut m = [[Elem::ZERO; 4]; 4];
        for (c, (i, j)) in self.coeffs.iter().zip(MONOMIALS) {
            if i == j {
                m[i][i] = f.add(*c, *c);
            } else {
                m[i][j] = *c;
                m[j][i] = *c;
            }
        }
        m
    }

    /// Points of the zero set where the quadric is singular.
    pub fn singular_points(&self, geom: &Geometry, zero_set: &PointSet) -> Vec<usize> {
        let f = geom.field();
        let m = self.polar_matrix(f);
        zero_set
            .iter()
            .filter(|&p| {
                let x = geom.coords(p);
                m.iter().all(|row| {
                    row.iter()
                        .zip(x)
                        .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                        .is_zero()
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricKind {
    RepeatedPlane,
    /// Pair of conjugate planes over GF(q²) meeting in a line of PG(3,q).
    Line,
    PlanePair,
    Cone,
    Hyperbolic,
    Elliptic,
}

impl QuadricKind {
    pub fn rank(self) -> u8 {
        match self {
            QuadricKind::RepeatedPlane => 1,
            QuadricKind::Line | QuadricKind::PlanePair => 2,
            QuadricKind::Cone => 3,
            QuadricKind::Hyperbolic | QuadricKind::Elliptic => 4,
        }
    }

    pub fn of_type(type_id: u8) -> Option<Self> {
        Some(match type_id {
            1 | 2 => QuadricKind::RepeatedPlane,
            3..=5 => QuadricKind::Line,
            6..=8 => QuadricKind::PlanePair,
            9 | 10 => QuadricKind::Cone,
            11..=14 => QuadricKind::Hyperbolic,
            15 => QuadricKind::Elliptic,
            _ => return None,
        })
    }

    pub fn description(self) -> &'static str {
        match self {
            QuadricKind::RepeatedPlane => "repeated plane",
            QuadricKind::Line => "line",
            QuadricKind::PlanePair => "pair of distinct planes",
            QuadricKind::Cone => "quadric cone",
            QuadricKind::Hyperbolic => "hyperbolic quadric",
            QuadricKind::Elliptic => "elliptic quadric",
        }
    }
}

/// Geometric evidence behind a type assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassDetail {
    RepeatedPlane {
        plane: Plane,
        tangent: bool,
    },
    Line {
        line: Line,
        class: LineClass,
    },
    PlanePair {
        planes: [Plane; 2],
        tangent: [bool; 2],
        line: Line,
        line_class: LineClass,
    },
    Cone {
        vertex: usize,
        /// Lines of the cone that are generators of X (0, 1 or 2).
        generators: usize,
    },
    Hyperbolic {
        /// Generators of X on the quadric, split by regulus, larger first.
        per_regulus: [usize; 2],
    },
    Elliptic,
}

#[derive(Debug, Clone)]
pub struct QuadricClass {
    pub kind: QuadricKind,
    /// 1..=15.
    pub type_id: u8,
    pub zero_set: PointSet,
    /// |Z ∩ X|.
    pub section: usize,
    pub detail: ClassDetail,
}

impl QuadricClass {
    pub fn rank(&self) -> u8 {
        self.kind.rank()
    }
}

/// Signature-based classification of a nonzero form.
pub fn classify(form: &QuadraticForm, surface: &HermitianSurface) -> Result<QuadricClass> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    let zero_set = form.zero_set(surface.geometry());
    classify_zero_set(form, zero_set, surface)
}

/// Classification when the zero set is already known.
pub fn classify_zero_set(
    form: &QuadraticForm,
    zero_set: PointSet,
    surface: &HermitianSurface,
) -> Result<QuadricClass> {
    let geom = surface.geometry();
    let q = geom.q();
    let n = zero_set.count();
    let section = surface.section_size(&zero_set);
    let fail = |what: String| Error::Internal(format!("form {form}: {what}"));

    let (kind, type_id, detail) = if n == q + 1 {
        let line = geom
            .line_from_set(&zero_set)
            .ok_or_else(|| fail(format!("{n} points but not a line")))?;
        let class = surface.classify_line(&line)?;
        let ty = match class {
            LineClass::Tangent => 3,
            LineClass::Secant => 4,
            LineClass::Generator => 5,
        };
        (QuadricKind::Line, ty, ClassDetail::Line { line, class })
    } else if n == q * q + q + 1 {
        match (0..geom.num_planes()).find(|&h| geom.plane_points(h) == &zero_set) {
            Some(h) => {
                let plane = geom.plane(h);
                let tangent = surface.is_tangent_plane(&plane)?;
                let ty = if tangent { 1 } else { 2 };
                (QuadricKind::RepeatedPlane, ty, ClassDetail::RepeatedPlane { plane, tangent })
            }
            None => {
                let sing = form.singular_points(geom, &zero_set);
                let [vertex] = sing[..] else {
                    return Err(fail(format!("cone with {} singular points", sing.len())));
                };
                let generators = surface.generators_in(&zero_set).len();
                if generators > 2 {
                    return Err(fail(format!("cone holding {generators} generators of X")));
                }
                let ty = if generators == 0 { 9 } else { 10 };
                (QuadricKind::Cone, ty, ClassDetail::Cone { vertex, generators })
            }
        }
    } else if n == 2 * q * q + q + 1 {
        let hs: Vec<usize> = (0..geom.num_planes())
            .filter(|&h| geom.plane_points(h).is_subset(&zero_set))
            .collect();
        let [h1, h2] = hs[..] else {
            return Err(fail(format!("{n} points containing {} planes", hs.len())));
        };
        if geom.plane_points(h1).union(geom.plane_points(h2)) != zero_set {
            return Err(fail("plane pair does not cover its zero set".into()));
        }
        let planes = [geom.plane(h1), geom.plane(h2)];
        let tangent = [surface.is_tangent_plane(&planes[0])?, surface.is_tangent_plane(&planes[1])?];
        let line = geom.meet(h1, h2)?;
        let line_class = surface.classify_line(&line)?;
        let ty = match tangent.iter().filter(|&&b| b).count() {
            2 => 6,
            1 => 7,
            _ => 8,
        };
        (
            QuadricKind::PlanePair,
            ty,
            ClassDetail::PlanePair {
                planes,
                tangent,
                line,
                line_class,
            },
        )
    } else if n == (q + 1) * (q + 1) {
        let per_regulus = split_generators(surface, &surface.generators_in(&zero_set))
            .map_err(&fail)?;
        let ty = match per_regulus[0] {
            0 => 14,
            1 => 13,
            2 => 12,
            _ => 11,
        };
        (QuadricKind::Hyperbolic, ty, ClassDetail::Hyperbolic { per_regulus })
    } else if n == q * q + 1 {
        (QuadricKind::Elliptic, 15, ClassDetail::Elliptic)
    } else {
        return Err(fail(format!("zero set of {n} points matches no quadric signature")));
    };

    Ok(QuadricClass {
        kind,
        type_id,
        zero_set,
        section,
        detail,
    })
}

/// Splits lines of a hyperbolic quadric into its two rulings: lines of one
/// ruling are pairwise skew and meet every line of the other.
fn split_generators(surface: &HermitianSurface, gens: &[usize]) -> std::result::Result<[usize; 2], String> {
    let Some((&first, rest)) = gens.split_first() else {
        return Ok([0, 0]);
    };
    let lines = surface.generators();
    let (same, other): (Vec<usize>, Vec<usize>) = rest
        .iter()
        .partition(|&&g| !lines[g].meets(&lines[first]));
    let mut a = vec![first];
    a.extend(same);
    for (i, &x) in a.iter().enumerate() {
        for &y in &a[i + 1..] {
            if lines[x].meets(&lines[y]) {
                return Err("lines of one ruling meet".into());
            }
        }
        if let Some(&y) = other.iter().find(|&&y| !lines[x].meets(&lines[y])) {
            return Err(format!("generators {x} and {y} lie in opposite rulings but are skew"));
        }
    }
    for (i, &x) in other.iter().enumerate() {
        if other[i + 1..].iter().any(|&y| lines[x].meets(&lines[y])) {
            return Err("lines of one ruling meet".into());
        }
    }
    let (ca, cb) = (a.len(), other.len());
    Ok([ca.max(cb), ca.min(cb)])
}

/// One ruling of a hyperbolic quadric: q+1 pairwise skew lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regulus {
    pub lines: Vec<Line>,
}

/// Lines through `point` lying entirely in `set`.
fn lines_in_set_through(geom: &Geometry, set: &PointSet, point: usize) -> Vec<Line> {
    let mut covered = PointSet::empty(geom.num_points());
    covered.insert(point);
    let mut out = Vec::new();
    for b in set.iter() {
        if covered.contains(b) {
            continue;
        }
        let line = geom.line_through(point, b).expect("distinct");
        covered.union_with(line.points());
        if line.points().is_subset(set) {
            out.push(line);
        }
    }
    out
}

/// The two complementary reguli of a hyperbolic quadric.
pub fn reguli(class: &QuadricClass, geom: &Geometry) -> Result<(Regulus, Regulus)> {
    if class.kind != QuadricKind::Hyperbolic {
        return Err(Error::WrongQuadricType {
            expected: "hyperbolic quadric (types 11-14)",
            found: class.type_id,
        });
    }
    let z = &class.zero_set;
    let q = geom.q();
    let a = z.first().expect("nonempty");
    let through_a = lines_in_set_through(geom, z, a);
    let [l1, l2] = &through_a[..] else {
        return Err(Error::Internal(format!(
            "{} lines of the quadric through a point",
            through_a.len()
        )));
    };

    // Each point of `transversal` lies on exactly one line of the ruling
    // other than the transversal itself.
    let ruling = |transversal: &Line| -> Result<Regulus> {
        let mut lines = Vec::with_capacity(q + 1);
        for &x in transversal.ids() {
            let mut through: Vec<Line> = lines_in_set_through(geom, z, x)
                .into_iter()
                .filter(|l| l != transversal)
                .collect();
            if through.len() != 1 {
                return Err(Error::Internal("hyperbolic point off the two rulings".into()));
            }
            lines.push(through.remove(0));
        }
        lines.sort_by(|x, y| x.ids().cmp(y.ids()));
        Ok(Regulus { lines })
    };
    let r1 = ruling(l2)?;
    let r2 = ruling(l1)?;
    Ok((r1, r2))
}

/// The component planes and their common line of a plane pair.
pub fn decompose_plane_pair(class: &QuadricClass) -> Result<(Plane, Plane, Line)> {
    match &class.detail {
        ClassDetail::PlanePair { planes, line, .. } => Ok((planes[0], planes[1], line.clone())),
        _ => Err(Error::WrongQuadricType {
            expected: "pair of distinct planes (types 6-8)",
            found: class.type_id,
        }),
    }
}
