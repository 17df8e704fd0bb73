//! Random instance generators and brute-force reference implementations
//! shared by the integration suites. The references work on plain `u32`
//! bitmasks and never call into the library's evaluation or fusion code.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use evidentia::{BodyOfEvidence, ElementSet, FocalElement, Frame, Mass, Rational, Regime};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Focal element over a ground of at most 32 elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ref {
    Empty,
    Set(u32),
    Theta,
}

pub type RefBody = BTreeMap<Ref, Rational>;

pub fn mask_of(set: &ElementSet) -> u32 {
    set.iter().fold(0u32, |acc, i| acc | (1 << i))
}

pub fn set_of(n: usize, mask: u32) -> ElementSet {
    ElementSet::from_indices(n, (0..n).filter(|i| mask & (1 << i) != 0))
}

pub fn to_ref<M: Mass>(body: &BodyOfEvidence<M>) -> BTreeMap<Ref, M> {
    body.focal_elements()
        .map(|(f, m)| {
            let r = match f {
                FocalElement::Empty => Ref::Empty,
                FocalElement::Theta => Ref::Theta,
                FocalElement::Subset(s) => Ref::Set(mask_of(s)),
            };
            (r, m.clone())
        })
        .collect()
}

pub fn from_ref(frame: &Arc<Frame>, body: &RefBody, regime: Regime) -> BodyOfEvidence<Rational> {
    let n = frame.ground_len();
    let assignments = body.iter().map(|(r, m)| {
        let f = match r {
            Ref::Empty => FocalElement::Empty,
            Ref::Theta => FocalElement::Theta,
            Ref::Set(mask) => FocalElement::Subset(set_of(n, *mask)),
        };
        (f, m.clone())
    });
    BodyOfEvidence::new(frame, assignments, regime).expect("generated body is valid")
}

pub fn random_frame(rng: &mut ChaCha8Rng, max_ground: usize, max_possibilities: usize) -> Arc<Frame> {
    let n = rng.gen_range(1..=max_ground);
    let ground: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let count = rng.gen_range(0..=max_possibilities);
    let mut named = Vec::new();
    for p in 0..count {
        let mask = rng.gen_range(1..(1u32 << n));
        let labels: Vec<String> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| format!("e{i}"))
            .collect();
        named.push((format!("P{p}"), labels));
    }
    Arc::new(Frame::new(ground, named).expect("generated frame is valid"))
}

/// Random mass function with up to `max_focals` focal elements. Θ appears
/// with probability one half; ∅ only when `regime` is open.
pub fn random_ref_body(rng: &mut ChaCha8Rng, n: usize, max_focals: usize, regime: Regime) -> RefBody {
    let k = rng.gen_range(1..=max_focals);
    let mut weights: BTreeMap<Ref, i64> = BTreeMap::new();
    for _ in 0..k {
        let r = match rng.gen_range(0..10) {
            0 if regime == Regime::OpenTbm => Ref::Empty,
            1 => Ref::Theta,
            _ => Ref::Set(rng.gen_range(1..(1u32 << n))),
        };
        *weights.entry(r).or_insert(0) += rng.gen_range(1..=12);
    }
    if rng.gen_bool(0.5) {
        *weights.entry(Ref::Theta).or_insert(0) += rng.gen_range(1..=12);
    }
    let total: i64 = weights.values().sum();
    weights.into_iter().map(|(r, w)| (r, q(w, total))).collect()
}

pub fn random_body(
    rng: &mut ChaCha8Rng,
    frame: &Arc<Frame>,
    max_focals: usize,
    regime: Regime,
) -> BodyOfEvidence<Rational> {
    let body = random_ref_body(rng, frame.ground_len(), max_focals, regime);
    from_ref(frame, &body, regime)
}

/// Literal belief and plausibility of a proper subset hypothesis.
pub fn ref_literal(body: &RefBody, h: u32) -> (Rational, Rational) {
    let mut bel = Rational::zero();
    let mut pl = Rational::zero();
    for (r, m) in body {
        match *r {
            Ref::Set(c) => {
                if c & !h == 0 {
                    bel += m;
                }
                if c & h != 0 {
                    pl += m;
                }
            }
            Ref::Theta => pl += m,
            Ref::Empty => {}
        }
    }
    (bel, pl)
}

fn meet(a: Ref, b: Ref) -> Ref {
    match (a, b) {
        (Ref::Empty, _) | (_, Ref::Empty) => Ref::Empty,
        (Ref::Theta, x) | (x, Ref::Theta) => x,
        (Ref::Set(x), Ref::Set(y)) if x & y == 0 => Ref::Empty,
        (Ref::Set(x), Ref::Set(y)) => Ref::Set(x & y),
    }
}

/// Unnormalized conjunctive combination, zeros dropped.
pub fn ref_smets(a: &RefBody, b: &RefBody) -> RefBody {
    let mut out = RefBody::new();
    for (x, mx) in a {
        for (y, my) in b {
            *out.entry(meet(*x, *y)).or_insert_with(Rational::zero) += mx * my;
        }
    }
    out.retain(|_, m| !m.is_zero());
    out
}

/// Normalized combination; `None` under total conflict.
pub fn ref_dempster(a: &RefBody, b: &RefBody) -> Option<(RefBody, Rational)> {
    let mut raw = ref_smets(a, b);
    let conflict = raw.remove(&Ref::Empty).unwrap_or_else(Rational::zero);
    let keep = Rational::from_ratio(1, 1) - &conflict;
    if keep.is_zero() {
        return None;
    }
    Some((raw.into_iter().map(|(r, m)| (r, m / &keep)).collect(), conflict))
}
