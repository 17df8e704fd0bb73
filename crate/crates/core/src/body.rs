//! Focal elements and bodies of evidence.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{ElementSet, Frame};
use crate::numeric::Mass;

/// Something mass can be committed to.
///
/// `Theta` is the open-world ignorance label. It is *not* the union of the
/// ground elements: it stands for possibilities not yet conceived.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FocalElement {
    Empty,
    Subset(ElementSet),
    Theta,
}

impl FocalElement {
    /// Intersection with the label conventions `X ∩ Θ = X` and `X ∩ ∅ = ∅`.
    pub fn intersect(&self, other: &FocalElement) -> FocalElement {
        match (self, other) {
            (FocalElement::Empty, _) | (_, FocalElement::Empty) => FocalElement::Empty,
            (FocalElement::Theta, x) | (x, FocalElement::Theta) => x.clone(),
            (FocalElement::Subset(a), FocalElement::Subset(b)) => {
                let meet = a.intersection(b);
                if meet.is_empty() {
                    FocalElement::Empty
                } else {
                    FocalElement::Subset(meet)
                }
            }
        }
    }

    pub fn as_subset(&self) -> Option<&ElementSet> {
        match self {
            FocalElement::Subset(set) => Some(set),
            _ => None,
        }
    }
}

impl fmt::Debug for FocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FocalElement::Empty => f.write_str("∅"),
            FocalElement::Theta => f.write_str("Θ"),
            FocalElement::Subset(set) => set.fmt(f),
        }
    }
}

/// Which normalization a body obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Subsets and Θ sum to one; no mass on ∅.
    Closed,
    /// Subsets, Θ and ∅ sum to one (transferable belief model).
    OpenTbm,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Closed => "closed",
            Regime::OpenTbm => "open_tbm",
        }
    }
}

/// A normalized assignment of masses to focal elements on one frame.
///
/// Zero masses are dropped, so the stored keys are exactly the focal
/// elements and structural equality is equality of mass functions.
#[derive(Debug, Clone, PartialEq)]
pub struct BodyOfEvidence<M> {
    frame: Arc<Frame>,
    masses: BTreeMap<FocalElement, M>,
    regime: Regime,
}

impl<M: Mass> BodyOfEvidence<M> {
    /// Validates and builds a body. Duplicate focal elements are merged by
    /// summing their masses.
    pub fn new<I>(frame: &Arc<Frame>, assignments: I, regime: Regime) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalElement, M)>,
    {
        let mut masses: BTreeMap<FocalElement, M> = BTreeMap::new();
        for (focal, mass) in assignments {
            if mass.is_negative() {
                return Err(Error::NegativeMass(mass.render()));
            }
            if let FocalElement::Subset(set) = &focal {
                if !frame.contains_set(set) {
                    return Err(Error::SubsetOutsideFrame);
                }
                if set.is_empty() {
                    return Err(Error::EmptySubset);
                }
            }
            match masses.get_mut(&focal) {
                Some(existing) => *existing = existing.clone() + mass,
                None => {
                    masses.insert(focal, mass);
                }
            }
        }
        masses.retain(|_, m| !m.is_zero());
        if regime == Regime::Closed && masses.contains_key(&FocalElement::Empty) {
            return Err(Error::EmptyMassInClosedRegime);
        }
        let total = crate::numeric::sum(masses.values());
        if !total.is_unit_sum() {
            return Err(Error::NormalizationViolation(total.render()));
        }
        Ok(BodyOfEvidence {
            frame: Arc::clone(frame),
            masses,
            regime,
        })
    }

    /// Total ignorance: all mass on Θ.
    pub fn vacuous(frame: &Arc<Frame>) -> Self {
        BodyOfEvidence {
            frame: Arc::clone(frame),
            masses: BTreeMap::from([(FocalElement::Theta, M::one())]),
            regime: Regime::Closed,
        }
    }

    /// Builds a body from already-computed masses, dropping zeros. Callers
    /// guarantee normalization.
    pub(crate) fn from_raw(frame: Arc<Frame>, mut masses: BTreeMap<FocalElement, M>, regime: Regime) -> Self {
        masses.retain(|_, m| !m.is_zero());
        BodyOfEvidence { frame, masses, regime }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Mass of `focal`, zero when it is not a focal element.
    pub fn mass(&self, focal: &FocalElement) -> M {
        self.masses.get(focal).cloned().unwrap_or_else(M::zero)
    }

    pub fn theta_mass(&self) -> M {
        self.mass(&FocalElement::Theta)
    }

    pub fn empty_mass(&self) -> M {
        self.mass(&FocalElement::Empty)
    }

    /// Focal elements with their (strictly positive) masses, in canonical
    /// order: ∅ first, then subsets, then Θ.
    pub fn focal_elements(&self) -> impl Iterator<Item = (&FocalElement, &M)> {
        self.masses.iter()
    }

    pub fn masses(&self) -> &BTreeMap<FocalElement, M> {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn total(&self) -> M {
        crate::numeric::sum(self.masses.values())
    }

    pub fn is_vacuous(&self) -> bool {
        self.masses.len() == 1 && self.masses.contains_key(&FocalElement::Theta)
    }

    pub fn same_frame(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.frame, &other.frame) || *self.frame == *other.frame
    }

    /// Rescales to the target regime's normalization. A closed target drops
    /// the ∅ mass first.
    pub fn renormalize(&self, target: Regime) -> Result<Self> {
        let mut masses = self.masses.clone();
        if target == Regime::Closed {
            masses.remove(&FocalElement::Empty);
        }
        let total = crate::numeric::sum(masses.values());
        if total.is_zero() {
            return Err(Error::TotalConflict);
        }
        for mass in masses.values_mut() {
            *mass = mass.clone() / total.clone();
        }
        Ok(Self::from_raw(Arc::clone(&self.frame), masses, target))
    }

    /// Same masses relabelled onto another frame through `map`, summing
    /// masses of focal elements that share an image.
    pub(crate) fn transport<F>(&self, frame: Arc<Frame>, map: F) -> Self
    where
        F: Fn(&ElementSet) -> ElementSet,
    {
        let mut masses: BTreeMap<FocalElement, M> = BTreeMap::new();
        for (focal, mass) in &self.masses {
            let image = match focal {
                FocalElement::Subset(set) => FocalElement::Subset(map(set)),
                other => other.clone(),
            };
            let slot = masses.entry(image).or_insert_with(M::zero);
            *slot = slot.clone() + mass.clone();
        }
        Self::from_raw(frame, masses, self.regime)
    }

    /// Whether masses agree within `tolerance` (absolute, per focal element).
    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        if !self.same_frame(other) {
            return false;
        }
        let keys: std::collections::BTreeSet<&FocalElement> = self.masses.keys().chain(other.masses.keys()).collect();
        keys.into_iter()
            .all(|k| (self.mass(k).to_f64() - other.mass(k).to_f64()).abs() <= tolerance)
    }

    /// Converts the masses to another numeric type through `f64`.
    pub fn to_float(&self) -> BodyOfEvidence<f64> {
        BodyOfEvidence {
            frame: Arc::clone(&self.frame),
            masses: self.masses.iter().map(|(k, v)| (k.clone(), v.to_f64())).collect(),
            regime: self.regime,
        }
    }
}
