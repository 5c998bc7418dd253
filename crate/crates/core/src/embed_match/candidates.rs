use std::collections::BTreeMap;

use rayon::prelude::*;

use super::embed::Embedding;
use super::MatchConstraint;

/// One side of a matching problem: match-language length in word tokens and
/// the sentence vector, if the text was embeddable.
#[derive(Clone, Copy, Debug)]
pub struct SideItem<'a> {
    pub len: usize,
    pub vector: Option<&'a Embedding>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub left: usize,
    pub right: usize,
    pub cosine: f64,
    pub len_ratio: f64,
}

pub fn len_ratio(a: usize, b: usize) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    hi as f64 / lo as f64
}

/// Candidate edges per left item, in left-index order. Right items are
/// looked up through length buckets, checked against the exact ratio and
/// cosine thresholds, ranked by cosine (ties by right index) and truncated
/// to the cap.
pub fn generate_candidates(left: &[SideItem], right: &[SideItem], c: &MatchConstraint) -> Vec<Candidate> {
    let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, item) in right.iter().enumerate() {
        if item.len > 0 && item.vector.is_some_and(|v| !v.is_zero()) {
            buckets.entry(item.len).or_default().push(j);
        }
    }
    left.par_iter()
        .enumerate()
        .map(|(i, item)| {
            let Some(v) = item.vector.filter(|v| item.len > 0 && !v.is_zero()) else {
                return Vec::new();
            };
            let l = item.len as f64;
            let lo = (l / c.max_len_ratio).floor() as usize;
            let hi = (l * c.max_len_ratio).ceil() as usize;
            let mut row: Vec<Candidate> = buckets
                .range(lo.max(1)..=hi)
                .flat_map(|(_, js)| js.iter().copied())
                .filter_map(|j| {
                    let ratio = len_ratio(item.len, right[j].len);
                    if ratio > c.max_len_ratio {
                        return None;
                    }
                    let cosine = v.cosine(right[j].vector.expect("bucketed items have vectors"));
                    (cosine > c.min_cosine).then_some(Candidate {
                        left: i,
                        right: j,
                        cosine,
                        len_ratio: ratio,
                    })
                })
                .collect();
            row.sort_by(|a, b| b.cosine.total_cmp(&a.cosine).then(a.right.cmp(&b.right)));
            if let Some(cap) = c.candidate_cap {
                row.truncate(cap);
            }
            row
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
