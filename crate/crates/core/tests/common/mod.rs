//! Slow, direct reimplementations used as oracles. Nothing here touches the
//! crate's tables, bitsets or classifier.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// GF(p²) as pairs a + b·x with x² = c0 + c1·x.
#[derive(Clone, Copy)]
pub struct Gf2 {
    pub p: u32,
    c0: u32,
    c1: u32,
}

pub type E = (u32, u32);

impl Gf2 {
    pub fn for_t(t: u32) -> Self {
        match t {
            2 => Gf2 { p: 2, c0: 1, c1: 1 },
            3 => Gf2 { p: 3, c0: 2, c1: 0 },
            _ => panic!("oracle covers t = 2, 3"),
        }
    }
    pub fn t(&self) -> u32 {
        self.p
    }
    pub fn q(&self) -> u32 {
        self.p * self.p
    }
    pub fn elements(&self) -> Vec<E> {
        let p = self.p;
        (0..p * p).map(|i| (i % p, i / p)).collect()
    }
    pub fn add(&self, a: E, b: E) -> E {
        ((a.0 + b.0) % self.p, (a.1 + b.1) % self.p)
    }
    pub fn mul(&self, a: E, b: E) -> E {
        let p = self.p;
        let hi = a.1 * b.1 % p;
        let lo = a.0 * b.0 % p;
        let mid = (a.0 * b.1 + a.1 * b.0) % p;
        ((lo + hi * self.c0) % p, (mid + hi * self.c1) % p)
    }
    pub fn pow(&self, a: E, n: u32) -> E {
        (0..n).fold((1, 0), |acc, _| self.mul(acc, a))
    }
    pub fn inv(&self, a: E) -> E {
        *self.elements().iter().find(|&&b| self.mul(a, b) == (1, 0)).expect("nonzero")
    }
    pub fn is_zero(a: E) -> bool {
        a == (0, 0)
    }
}

pub struct Space {
    pub f: Gf2,
    pub points: Vec<[E; 4]>,
}

impl Space {
    pub fn new(t: u32) -> Self {
        let f = Gf2::for_t(t);
        let els = f.elements();
        let mut points = Vec::new();
        for a in &els {
            for b in &els {
                for c in &els {
                    for d in &els {
                        let v = [*a, *b, *c, *d];
                        if let Some(first) = v.iter().find(|e| !Gf2::is_zero(**e)) {
                            if *first == (1, 0) {
                                points.push(v);
                            }
                        }
                    }
                }
            }
        }
        Space { f, points }
    }

    fn index(&self, v: [E; 4]) -> usize {
        let first = *v.iter().find(|e| !Gf2::is_zero(**e)).expect("nonzero");
        let s = self.f.inv(first);
        let n = v.map(|e| self.f.mul(s, e));
        self.points.iter().position(|p| *p == n).unwrap()
    }

    pub fn on_x(&self, v: &[E; 4]) -> bool {
        let t = self.f.t();
        let s = v.iter().fold((0, 0), |acc, &e| self.f.add(acc, self.f.pow(e, t + 1)));
        Gf2::is_zero(s)
    }

    pub fn hermitian(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.on_x(&self.points[i])).collect()
    }

    pub fn dot(&self, a: &[E; 4], b: &[E; 4]) -> E {
        (0..4).fold((0, 0), |acc, i| self.f.add(acc, self.f.mul(a[i], b[i])))
    }

    /// Planes are indexed like points; plane i is {x : <points[i], x> = 0}.
    pub fn plane(&self, i: usize) -> Vec<usize> {
        let h = self.points[i];
        (0..self.points.len())
            .filter(|&j| Gf2::is_zero(self.dot(&h, &self.points[j])))
            .collect()
    }

    /// Every line as the sorted ids of its points.
    pub fn lines(&self) -> BTreeSet<Vec<usize>> {
        let els = self.f.elements();
        let mut out = BTreeSet::new();
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                let mut l: Vec<usize> = Vec::new();
                for a in &els {
                    for b in &els {
                        if Gf2::is_zero(*a) && Gf2::is_zero(*b) {
                            continue;
                        }
                        let v: [E; 4] = std::array::from_fn(|k| {
                            self.f.add(self.f.mul(*a, self.points[i][k]), self.f.mul(*b, self.points[j][k]))
                        });
                        l.push(self.index(v));
                    }
                }
                l.sort_unstable();
                l.dedup();
                out.insert(l);
            }
        }
        out
    }

    /// The ten monomial values at a point, ordered x0², x0x1, …, x3².
    pub fn monomials(&self, v: &[E; 4]) -> [E; 10] {
        let mut m = [(0, 0); 10];
        let mut k = 0;
        for i in 0..4 {
            for j in i..4 {
                m[k] = self.f.mul(v[i], v[j]);
                k += 1;
            }
        }
        m
    }
}

/// Weight → number of nonzero codewords, by evaluating every projective form
/// directly.
pub fn weight_distribution(space: &Space) -> std::collections::BTreeMap<usize, u64> {
    let f = space.f;
    let q = f.q() as usize;
    let els = f.elements();
    let x = space.hermitian();
    let mons: Vec<[E; 10]> = x.iter().map(|&i| space.monomials(&space.points[i])).collect();
    let mut hist = vec![0u64; x.len() + 1];
    for lead in 0..10 {
        let rest = 9 - lead;
        for idx in 0..q.pow(rest as u32) {
            let mut c = [(0, 0); 10];
            c[lead] = (1, 0);
            let mut r = idx;
            for k in (lead + 1..10).rev() {
                c[k] = els[r % q];
                r /= q;
            }
            let w = mons
                .iter()
                .filter(|m| {
                    let v = (0..10).fold((0, 0), |acc, k| f.add(acc, f.mul(c[k], m[k])));
                    !Gf2::is_zero(v)
                })
                .count();
            hist[w] += 1;
        }
    }
    hist.into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(w, c)| (w, c * (q as u64 - 1)))
        .collect()
}
