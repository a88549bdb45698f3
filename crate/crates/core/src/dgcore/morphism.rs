use std::borrow::Cow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::Mat;

use super::constructions::cone;
use super::module::{same_algebra, DgModule};
use super::validate::{ValidationReport, Violation};

/// Strict degree-0 map of DG-modules, stored degree by degree over the source window.
#[derive(Clone, Debug)]
pub struct DgMorphism {
    source: Arc<DgModule>,
    target: Arc<DgModule>,
    maps: Vec<Mat>,
}

impl DgMorphism {
    /// `f(i)` must be a `target.dim(i) x source.dim(i)` matrix.
    pub fn new(source: Arc<DgModule>, target: Arc<DgModule>, mut f: impl FnMut(i32) -> Mat) -> DgMorphism {
        assert!(same_algebra(source.algebra(), target.algebra()), "morphism between modules over different algebras");
        let maps = source
            .degrees()
            .map(|i| {
                let m = f(i);
                assert_eq!((m.rows(), m.cols()), (target.dim(i), source.dim(i)), "morphism block shape in degree {i}");
                m
            })
            .collect();
        DgMorphism { source, target, maps }
    }

    pub fn identity(m: Arc<DgModule>) -> DgMorphism {
        let f = m.field();
        let mm = m.clone();
        DgMorphism::new(m.clone(), m, |i| Mat::identity(f, mm.dim(i)))
    }

    pub fn zero(source: Arc<DgModule>, target: Arc<DgModule>) -> DgMorphism {
        let f = source.field();
        let (s, t) = (source.clone(), target.clone());
        DgMorphism::new(source, target, |i| Mat::zeros(f, t.dim(i), s.dim(i)))
    }

    pub fn source(&self) -> &Arc<DgModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DgModule> {
        &self.target
    }

    pub fn map(&self, i: i32) -> Cow<'_, Mat> {
        if self.source.dim(i) == 0 {
            Cow::Owned(Mat::zeros(self.source.field(), self.target.dim(i), 0))
        } else {
            Cow::Borrowed(&self.maps[(i - self.source.lo()) as usize])
        }
    }

    /// `self ∘ g`
    pub fn compose(&self, g: &DgMorphism) -> Result<DgMorphism> {
        if **g.target() != *self.source {
            return Err(Error::Invalid("composition of non-composable morphisms".into()));
        }
        let (a, b) = (self.clone(), g.clone());
        Ok(DgMorphism::new(g.source.clone(), self.target.clone(), move |i| a.map(i).mul(&b.map(i))))
    }

    /// Induced map `H^i(source) -> H^i(target)` in class coordinates.
    pub fn h_map(&self, i: i32) -> Mat {
        let f = self.source.field();
        let (cs, ct) = (self.source.cohomology(), self.target.cohomology());
        match (cs.h(i), ct.h(i)) {
            (Some(s), Some(t)) => t.proj.mul(&self.map(i)).mul(&s.reps),
            _ => Mat::zeros(f, ct.dim(i), cs.dim(i)),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let (s, t) = (&self.source, &self.target);
        let r = s.algebra();
        let mut v = Vec::new();
        let lo = s.lo().min(t.lo()) - 1;
        let hi = s.hi().max(t.hi()) + 1;
        for i in lo..=hi {
            if self.map(i + 1).mul(&s.d(i)) != t.d(i).mul(&self.map(i)) {
                v.push(Violation::new("chain map", format!("degree {i}")));
            }
            for j in r.degrees() {
                for b in 0..r.dim(j) {
                    if self.map(i + j).mul(&s.act(i, j, b)) != t.act(i, j, b).mul(&self.map(i)) {
                        v.push(Violation::new("R-linear", format!("degree {i}, r=({j},{b})")));
                    }
                }
            }
        }
        ValidationReport::new(v)
    }

    /// True iff the cone is acyclic.
    pub fn is_quasi_iso(&self) -> bool {
        cone(self).module.is_acyclic()
    }
}
