//! Single-step coarsening and refinement of frames, carrying bodies along.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::body::BodyOfEvidence;
use crate::error::{Error, Result};
use crate::frame::{ElementSet, Frame};
use crate::numeric::Mass;

/// Merges ground labels into coarse labels. The coarse ground lists each
/// coarse label once, in order of first appearance along the fine ground.
pub fn coarsen<M: Mass>(
    body: &BodyOfEvidence<M>,
    merge_map: &HashMap<String, String>,
) -> Result<(Arc<Frame>, BodyOfEvidence<M>)> {
    let fine = body.frame();
    for label in merge_map.keys() {
        if fine.index_of(label).is_none() {
            return Err(Error::UnknownLabel(label.clone()));
        }
    }
    let mut coarse_ground: Vec<String> = Vec::new();
    let mut coarse_index: HashMap<&str, usize> = HashMap::new();
    let mut image_of = Vec::with_capacity(fine.ground_len());
    for label in fine.ground() {
        let target = merge_map
            .get(label)
            .ok_or_else(|| Error::PartialMergeMap(label.clone()))?;
        if target.is_empty() {
            return Err(Error::EmptyLabel);
        }
        let next = coarse_ground.len();
        let idx = *coarse_index.entry(target.as_str()).or_insert(next);
        if idx == next {
            coarse_ground.push(target.clone());
        }
        image_of.push(idx);
    }
    let coarse_len = coarse_ground.len();
    let map = |set: &ElementSet| ElementSet::from_indices(coarse_len, set.iter().map(|i| image_of[i]));
    let possibilities: BTreeMap<String, ElementSet> = fine
        .possibilities()
        .map(|(name, set)| (name.to_string(), map(set)))
        .collect();
    let frame = Arc::new(Frame::from_parts(coarse_ground, possibilities));
    let moved = body.transport(Arc::clone(&frame), map);
    Ok((frame, moved))
}

/// Splits each ground label into a nonempty set of fine labels. Images must
/// be pairwise disjoint; the fine ground concatenates them in coarse order.
pub fn refine<M: Mass>(
    body: &BodyOfEvidence<M>,
    refinement_map: &HashMap<String, Vec<String>>,
) -> Result<(Arc<Frame>, BodyOfEvidence<M>)> {
    let coarse = body.frame();
    for label in refinement_map.keys() {
        if coarse.index_of(label).is_none() {
            return Err(Error::UnknownLabel(label.clone()));
        }
    }
    let mut fine_ground: Vec<String> = Vec::new();
    let mut seen: HashMap<&str, ()> = HashMap::new();
    let mut spans = Vec::with_capacity(coarse.ground_len());
    for label in coarse.ground() {
        let image = refinement_map
            .get(label)
            .ok_or_else(|| Error::PartialRefinementMap(label.clone()))?;
        if image.is_empty() {
            return Err(Error::EmptyImage(label.clone()));
        }
        let start = fine_ground.len();
        for fine_label in image {
            if fine_label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if seen.insert(fine_label.as_str(), ()).is_some() {
                return Err(Error::OverlappingImages(fine_label.clone()));
            }
            fine_ground.push(fine_label.clone());
        }
        spans.push(start..fine_ground.len());
    }
    if fine_ground.len() > crate::frame::MAX_GROUND {
        return Err(Error::GroundTooLarge(fine_ground.len()));
    }
    let fine_len = fine_ground.len();
    let map = |set: &ElementSet| ElementSet::from_indices(fine_len, set.iter().flat_map(|i| spans[i].clone()));
    let possibilities: BTreeMap<String, ElementSet> = coarse
        .possibilities()
        .map(|(name, set)| (name.to_string(), map(set)))
        .collect();
    let frame = Arc::new(Frame::from_parts(fine_ground, possibilities));
    let moved = body.transport(Arc::clone(&frame), map);
    Ok((frame, moved))
}
