//! Retrieval metrics: mean average precision over the full Hamming ranking
//! and precision / recall / F-measure inside a Hamming ball.

use std::io::Write;

use crate::codes::{BinaryCodes, HammingIndex};
use crate::error::{Error, Result};

pub const DEFAULT_RADIUS: u32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct QueryRecord {
    pub query_id: u64,
    pub ap: f64,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
    pub retrieved: usize,
    pub relevant: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub map: f64,
    pub mean_precision: f64,
    pub mean_recall: f64,
    pub mean_f: f64,
    pub radius: u32,
    pub per_query: Vec<QueryRecord>,
    /// Queries with no relevant gallery item; left out of every mean.
    pub excluded_queries: usize,
}

/// Average precision of a ranking given as gallery positions, with
/// `relevant[pos]` flagging the relevant positions.
pub fn average_precision(ranking: &[usize], relevant: &[bool]) -> Result<f64> {
    if ranking.len() != relevant.len() {
        return Err(Error::Dimension(format!(
            "ranking has {} items, relevance has {}",
            ranking.len(),
            relevant.len()
        )));
    }
    let total = relevant.iter().filter(|&&r| r).count();
    if total == 0 {
        return Err(Error::InvalidParameter(
            "average precision needs at least one relevant item".into(),
        ));
    }
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (k, &pos) in ranking.iter().enumerate() {
        if relevant[pos] {
            hits += 1;
            sum += hits as f64 / (k + 1) as f64;
        }
    }
    Ok(sum / total as f64)
}

pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

/// Evaluates every query against the gallery, with relevance meaning
/// "same class label". The gallery is never filtered for self-matches.
pub fn evaluate(
    index: &HammingIndex,
    queries: &BinaryCodes,
    query_labels: &[usize],
    gallery_labels: &[usize],
    radius: u32,
) -> Result<EvalReport> {
    let gallery = index.gallery();
    if gallery.is_empty() {
        return Err(Error::InvalidParameter("gallery is empty".into()));
    }
    if gallery.bits() != queries.bits() {
        return Err(Error::Dimension(format!(
            "gallery codes have {} bits, queries have {}",
            gallery.bits(),
            queries.bits()
        )));
    }
    if gallery_labels.len() != gallery.len() {
        return Err(Error::Dimension(format!(
            "{} gallery codes but {} gallery labels",
            gallery.len(),
            gallery_labels.len()
        )));
    }
    if query_labels.len() != queries.len() {
        return Err(Error::Dimension(format!(
            "{} query codes but {} query labels",
            queries.len(),
            query_labels.len()
        )));
    }

    let mut per_query = Vec::with_capacity(queries.len());
    let mut excluded = 0;
    let mut relevant = vec![false; gallery.len()];
    for (q, &label) in query_labels.iter().enumerate() {
        for (flag, &g) in relevant.iter_mut().zip(gallery_labels) {
            *flag = g == label;
        }
        let relevant_count = relevant.iter().filter(|&&r| r).count();
        if relevant_count == 0 {
            excluded += 1;
            continue;
        }
        let ranked = index.ranked_positions(queries.code(q))?;
        let order: Vec<usize> = ranked.iter().map(|&(_, p)| p).collect();
        let ap = average_precision(&order, &relevant)?;

        let in_ball = ranked.partition_point(|&(d, _)| d <= radius);
        let hits = ranked[..in_ball]
            .iter()
            .filter(|&&(_, p)| relevant[p])
            .count();
        let precision = if in_ball > 0 {
            hits as f64 / in_ball as f64
        } else {
            0.0
        };
        let recall = hits as f64 / relevant_count as f64;
        per_query.push(QueryRecord {
            query_id: queries.ids()[q],
            ap,
            precision,
            recall,
            f: f_measure(precision, recall),
            retrieved: in_ball,
            relevant: relevant_count,
        });
    }

    let mean = |f: fn(&QueryRecord) -> f64| {
        if per_query.is_empty() {
            0.0
        } else {
            per_query.iter().map(f).sum::<f64>() / per_query.len() as f64
        }
    };
    Ok(EvalReport {
        map: mean(|r| r.ap),
        mean_precision: mean(|r| r.precision),
        mean_recall: mean(|r| r.recall),
        mean_f: mean(|r| r.f),
        radius,
        excluded_queries: excluded,
        per_query,
    })
}

impl EvalReport {
    /// Flat `key=value` summary.
    pub fn write_summary<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "map={}", self.map)?;
        writeln!(w, "radius={}", self.radius)?;
        writeln!(w, "mean_precision_at_radius={}", self.mean_precision)?;
        writeln!(w, "mean_recall_at_radius={}", self.mean_recall)?;
        writeln!(w, "mean_f_measure_at_radius={}", self.mean_f)?;
        writeln!(w, "evaluated_queries={}", self.per_query.len())?;
        writeln!(w, "excluded_queries={}", self.excluded_queries)?;
        Ok(())
    }

    pub fn write_per_query_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "query_id,ap,precision,recall,f,retrieved,relevant")?;
        for r in &self.per_query {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.query_id, r.ap, r.precision, r.recall, r.f, r.retrieved, r.relevant
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn codes(rows: &[&str], ids: Vec<u64>) -> BinaryCodes {
        let signs: Vec<Vec<i8>> = rows
            .iter()
            .map(|r| r.chars().map(|c| if c == '1' { 1 } else { -1 }).collect())
            .collect();
        BinaryCodes::from_signs(&signs, ids).unwrap()
    }

    #[test]
    fn ap_examples() {
        assert_eq!(
            average_precision(&[1, 0, 2], &[true, true, false]).unwrap(),
            1.0
        );
        let ap = average_precision(&[0, 1, 2], &[true, false, true]).unwrap();
        assert!((ap - 5.0 / 6.0).abs() < 1e-15);
        let mut rel = vec![false; 7];
        rel[4] = true;
        let ap = average_precision(&[0, 1, 2, 3, 4, 5, 6], &rel).unwrap();
        assert!((ap - 0.2).abs() < 1e-15);
        assert!(average_precision(&[0, 1], &[true]).is_err());
        assert!(average_precision(&[0], &[false]).is_err());
    }

    #[test]
    fn full_radius_gives_unit_recall_and_class_share_precision() {
        let rows = ["0000", "0011", "1100", "1111", "0101", "1010"];
        let labels = vec![0, 0, 1, 1, 2, 2];
        let gallery = codes(&rows, (0..6).collect());
        let queries = gallery.clone();
        let index = HammingIndex::new(gallery);
        let report = evaluate(&index, &queries, &labels, &labels, 4).unwrap();
        for r in &report.per_query {
            assert_eq!(r.recall, 1.0);
            assert!((r.precision - 2.0 / 6.0).abs() < 1e-15);
        }
        assert_eq!(report.mean_recall, 1.0);
    }

    #[test]
    fn empty_ball_scores_zero() {
        let index = HammingIndex::new(codes(&["1111", "1110"], vec![0, 1]));
        let q = codes(&["0000"], vec![9]);
        let report = evaluate(&index, &q, &[0], &[0, 1], 2).unwrap();
        let r = &report.per_query[0];
        assert_eq!(
            (r.precision, r.recall, r.f, r.retrieved),
            (0.0, 0.0, 0.0, 0)
        );
    }

    #[test]
    fn hand_computed_three_item_gallery() {
        // Distances from query 000: item 10 → 1, item 11 → 3, item 12 → 2.
        let index = HammingIndex::new(codes(&["100", "111", "110"], vec![10, 11, 12]));
        let q = codes(&["000"], vec![0]);
        let report = evaluate(&index, &q, &[1], &[1, 1, 0], 2).unwrap();
        let r = &report.per_query[0];
        // Ranking: 10 (rel), 12 (irrel), 11 (rel) → AP = (1/1 + 2/3)/2.
        assert!((r.ap - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(r.retrieved, 2);
        assert_eq!(r.precision, 0.5);
        assert_eq!(r.recall, 0.5);
        assert_eq!(r.f, 0.5);
    }

    #[test]
    fn queries_without_relevant_items_are_excluded() {
        let index = HammingIndex::new(codes(&["1", "0"], vec![0, 1]));
        let q = codes(&["1", "1"], vec![5, 6]);
        let report = evaluate(&index, &q, &[0, 7], &[0, 0], 0).unwrap();
        assert_eq!(report.excluded_queries, 1);
        assert_eq!(report.per_query.len(), 1);
        assert_eq!(report.map, 1.0);
    }

    #[test]
    fn errors() {
        let empty = BinaryCodes::new(4, vec![], vec![]).unwrap();
        let q = codes(&["0000"], vec![0]);
        assert!(evaluate(&HammingIndex::new(empty), &q, &[0], &[], 2).is_err());
        let index = HammingIndex::new(codes(&["000"], vec![0]));
        assert!(evaluate(&index, &q, &[0], &[0], 2).is_err());
    }

    #[test]
    fn report_files() {
        let index = HammingIndex::new(codes(&["100", "111", "110"], vec![10, 11, 12]));
        let q = codes(&["000"], vec![4]);
        let report = evaluate(&index, &q, &[1], &[1, 1, 0], 2).unwrap();
        let mut csv = Vec::new();
        report.write_per_query_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(
            text,
            "query_id,ap,precision,recall,f,retrieved,relevant\n4,0.8333333333333333,0.5,0.5,0.5,2,2\n"
        );
        let mut summary = Vec::new();
        report.write_summary(&mut summary).unwrap();
        assert!(String::from_utf8(summary)
            .unwrap()
            .starts_with("map=0.8333333333333333\nradius=2\n"));
    }

    proptest! {
        #[test]
        fn ap_bounds_and_perfect_iff_relevant_first(rel in prop::collection::vec(any::<bool>(), 1..40), seed in any::<u64>()) {
            prop_assume!(rel.iter().any(|&r| r));
            let mut order: Vec<usize> = (0..rel.len()).collect();
            // deterministic shuffle from the seed
            let mut s = seed | 1;
            for i in (1..order.len()).rev() {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                order.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let ap = average_precision(&order, &rel).unwrap();
            prop_assert!((0.0..=1.0).contains(&ap));
            let r = rel.iter().filter(|&&x| x).count();
            let relevant_first = order[..r].iter().all(|&p| rel[p]);
            prop_assert_eq!(ap == 1.0, relevant_first);
        }
    }
}
