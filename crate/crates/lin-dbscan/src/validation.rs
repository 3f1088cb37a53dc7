//! External validation indices against ground-truth labels.
//!
//! All of precision / recall / F / Rand / Jaccard / Fowlkes-Mallows are the
//! pair-counting variants: a point pair is a true positive when it is
//! co-clustered in both the prediction and the truth. NMI is computed from
//! the joint label counts; the normalizer is selectable because published
//! numbers rarely say which one was used.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cluster::Clustering;
use crate::error::{Error, Result};

/// How predicted noise enters the evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoisePolicy {
    /// Every noise point forms its own predicted singleton cluster. This is
    /// the default: an unfiltered min_pts=1 run labels nothing as noise, so
    /// singletons keep the two algorithms comparable on equal footing.
    #[default]
    NoiseAsSingletons,
    /// Noise points are dropped from the evaluation entirely.
    ExcludeNoise,
}

/// Normalizer for NMI: mutual information divided by this function of the
/// two label entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NmiNormalizer {
    #[default]
    Mean,
    Min,
    Max,
    Sqrt,
}

/// Pair counts and joint label counts between a prediction and the truth.
#[derive(Debug, Clone)]
pub struct ContingencyStats {
    pub true_pos: u64,
    pub false_pos: u64,
    pub false_neg: u64,
    pub true_neg: u64,
    /// joint_counts[i][j] = points in predicted cluster i with truth class j.
    /// Under the singleton policy, noise points appear as extra rows.
    pub joint_counts: Vec<Vec<u64>>,
    pub n_eval: usize,
}

/// Builds pair counts over all unordered pairs of evaluated points.
///
/// `truth[row]` must hold a label for every evaluated point (missing labels
/// are an error). Pair counts are derived from the joint counts, so the cost
/// is linear in points plus the table size.
pub fn contingency(
    pred: &Clustering,
    truth: &[Option<String>],
    policy: NoisePolicy,
) -> Result<ContingencyStats> {
    let mut class_ids: BTreeMap<&str, usize> = BTreeMap::new();
    let mut class_of_row = |row: usize| -> Result<usize> {
        let label = truth
            .get(row)
            .and_then(|l| l.as_deref())
            .ok_or_else(|| Error::invalid(format!("missing truth label for row {row}")))?;
        let next = class_ids.len();
        Ok(*class_ids.entry(label).or_insert(next))
    };

    let mut rows: Vec<Vec<usize>> = Vec::new();
    for cluster in &pred.clusters {
        let mut classes = Vec::with_capacity(cluster.len());
        for &row in &cluster.point_indices {
            classes.push(class_of_row(row)?);
        }
        rows.push(classes);
    }
    match policy {
        NoisePolicy::NoiseAsSingletons => {
            for &row in &pred.noise {
                rows.push(vec![class_of_row(row)?]);
            }
        }
        NoisePolicy::ExcludeNoise => {}
    }

    let n_classes = class_ids.len();
    let joint_counts: Vec<Vec<u64>> = rows
        .iter()
        .map(|classes| {
            let mut counts = vec![0u64; n_classes];
            for &c in classes {
                counts[c] += 1;
            }
            counts
        })
        .collect();

    let n_eval: u64 = rows.iter().map(|r| r.len() as u64).sum();
    let comb2 = |x: u64| x * x.saturating_sub(1) / 2;
    let true_pos: u64 = joint_counts
        .iter()
        .flat_map(|r| r.iter())
        .map(|&c| comb2(c))
        .sum();
    let same_pred: u64 = joint_counts
        .iter()
        .map(|r| comb2(r.iter().sum()))
        .sum();
    let mut class_sizes = vec![0u64; n_classes];
    for r in &joint_counts {
        for (j, &c) in r.iter().enumerate() {
            class_sizes[j] += c;
        }
    }
    let same_truth: u64 = class_sizes.iter().map(|&c| comb2(c)).sum();
    let false_pos = same_pred - true_pos;
    let false_neg = same_truth - true_pos;
    let true_neg = comb2(n_eval) - true_pos - false_pos - false_neg;

    Ok(ContingencyStats {
        true_pos,
        false_pos,
        false_neg,
        true_neg,
        joint_counts,
        n_eval: n_eval as usize,
    })
}

/// The seven indices, all in [0, 1].
#[derive(Debug, Clone, Serialize)]
pub struct IndexReport {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub rand: f64,
    pub jaccard: f64,
    pub fowlkes_mallows: f64,
    pub nmi: f64,
    /// Indices whose denominator was zero and were therefore defined as 0.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub degenerate: Vec<&'static str>,
}

/// Computes all indices with the default (arithmetic-mean) NMI normalizer.
pub fn indices(stats: &ContingencyStats) -> Result<IndexReport> {
    indices_with_normalizer(stats, NmiNormalizer::Mean)
}

pub fn indices_with_normalizer(
    stats: &ContingencyStats,
    normalizer: NmiNormalizer,
) -> Result<IndexReport> {
    if stats.n_eval < 2 {
        return Err(Error::invalid(
            "at least 2 evaluated points are required to compute indices",
        ));
    }
    let mut degenerate = Vec::new();
    fn ratio(num: u64, den: u64, name: &'static str, degenerate: &mut Vec<&'static str>) -> f64 {
        if den == 0 {
            degenerate.push(name);
            0.0
        } else {
            num as f64 / den as f64
        }
    }

    let tp = stats.true_pos;
    let precision = ratio(tp, tp + stats.false_pos, "precision", &mut degenerate);
    let recall = ratio(tp, tp + stats.false_neg, "recall", &mut degenerate);
    let f_measure = if precision + recall == 0.0 {
        degenerate.push("f_measure");
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    let total_pairs = tp + stats.false_pos + stats.false_neg + stats.true_neg;
    let rand = ratio(tp + stats.true_neg, total_pairs, "rand", &mut degenerate);
    let jaccard = ratio(
        tp,
        tp + stats.false_pos + stats.false_neg,
        "jaccard",
        &mut degenerate,
    );
    let fowlkes_mallows = (precision * recall).sqrt();

    let nmi = match nmi_from_joint(&stats.joint_counts, normalizer) {
        Some(v) => v,
        None => {
            degenerate.push("nmi");
            0.0
        }
    };

    Ok(IndexReport {
        precision,
        recall,
        f_measure,
        rand,
        jaccard,
        fowlkes_mallows,
        nmi,
        degenerate,
    })
}

/// NMI over the joint counts. `None` when the chosen normalizer is zero and
/// the partitions are not both trivial; two single-cluster partitions are
/// identical, so that case is 1.
fn nmi_from_joint(joint: &[Vec<u64>], normalizer: NmiNormalizer) -> Option<f64> {
    let n: u64 = joint.iter().flat_map(|r| r.iter()).sum();
    if n == 0 {
        return None;
    }
    let nf = n as f64;
    let row_sums: Vec<u64> = joint.iter().map(|r| r.iter().sum()).collect();
    let n_cols = joint.first().map_or(0, Vec::len);
    let mut col_sums = vec![0u64; n_cols];
    for r in joint {
        for (j, &c) in r.iter().enumerate() {
            col_sums[j] += c;
        }
    }
    // Entropy and MI terms share one arithmetic shape,
    // (count/n) * ln(num/den) with exact integer products, so a prediction
    // identical to the truth yields MI bit-equal to both entropies and an
    // NMI of exactly 1.0.
    let term = |count: u64, num: f64, den: f64| count as f64 / nf * (num / den).ln();
    let entropy = |sums: &[u64]| -> f64 {
        sums.iter()
            .filter(|&&s| s > 0)
            .map(|&s| term(s, nf, s as f64))
            .sum()
    };
    let h_pred = entropy(&row_sums);
    let h_truth = entropy(&col_sums);
    if h_pred == 0.0 && h_truth == 0.0 {
        return Some(1.0);
    }
    let norm = match normalizer {
        NmiNormalizer::Mean => (h_pred + h_truth) / 2.0,
        NmiNormalizer::Min => h_pred.min(h_truth),
        NmiNormalizer::Max => h_pred.max(h_truth),
        NmiNormalizer::Sqrt => (h_pred * h_truth).sqrt(),
    };
    if norm == 0.0 {
        return None;
    }
    let mut mi = 0.0;
    for (i, r) in joint.iter().enumerate() {
        for (j, &c) in r.iter().enumerate() {
            if c > 0 {
                mi += term(c, nf * c as f64, row_sums[i] as f64 * col_sums[j] as f64);
            }
        }
    }
    Some((mi / norm).clamp(0.0, 1.0))
}
