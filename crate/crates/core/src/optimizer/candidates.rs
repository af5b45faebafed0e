use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::measures::{Dataset, Group, ThresholdPair};

/// Evenly spaced thresholds `{0, step, 2·step, …, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    intervals: usize,
}

impl Grid {
    pub fn new(step: f64) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 || step > 1.0 {
            return Err(Error::InvalidGridStep(step));
        }
        let intervals = (1.0 / step).round();
        if (intervals * step - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidGridStep(step));
        }
        Ok(Grid {
            intervals: intervals as usize,
        })
    }

    pub fn step(&self) -> f64 {
        1.0 / self.intervals as f64
    }

    /// Number of grid points, endpoints included.
    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, index: usize) -> f64 {
        index as f64 / self.intervals as f64
    }

    /// Grid index of `t`, if `t` lies on the grid.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let k = (t * self.intervals as f64).round();
        if !(0.0..=self.intervals as f64).contains(&k) || (self.value(k as usize) - t).abs() > 1e-9
        {
            return None;
        }
        Some(k as usize)
    }

    fn pair(&self, key: GridKey) -> ThresholdPair {
        ThresholdPair::new(self.value(key.0), self.value(key.1)).expect("grid values lie in [0, 1]")
    }
}

/// Grid indices `(k0, k1)` of a candidate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct GridKey(usize, usize);

impl GridKey {
    /// Ascending `t0 - t1`, then ascending `t0`: from preferential treatment
    /// of group 0 to preferential treatment of group 1.
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let d = self.0 as i64 - self.1 as i64;
        let od = other.0 as i64 - other.1 as i64;
        d.cmp(&od).then(self.0.cmp(&other.0))
    }
}

/// Candidate threshold pairs in canonical order, without duplicates.
///
/// The position of a pair in this sequence is its threshold-pair index.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    grid: Grid,
    keys: Vec<GridKey>,
    pairs: Vec<ThresholdPair>,
    target_positives: usize,
}

impl CandidateSet {
    fn from_keys(grid: Grid, mut keys: Vec<GridKey>, target_positives: usize) -> Self {
        keys.sort_by(GridKey::canonical_cmp);
        keys.dedup();
        let pairs = keys.iter().map(|&k| grid.pair(k)).collect();
        CandidateSet {
            grid,
            keys,
            pairs,
            target_positives,
        }
    }

    /// Builds a set from arbitrary on-grid pairs.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = ThresholdPair>,
        grid_step: f64,
        target_positives: usize,
    ) -> Result<Self> {
        let grid = Grid::new(grid_step)?;
        let keys = pairs
            .into_iter()
            .map(|p| match (grid.index_of(p.t0()), grid.index_of(p.t1())) {
                (Some(k0), Some(k1)) => Ok(GridKey(k0, k1)),
                _ => Err(Error::OffGrid {
                    t0: p.t0(),
                    t1: p.t1(),
                    step: grid_step,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        if keys.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        Ok(CandidateSet::from_keys(grid, keys, target_positives))
    }

    /// Every pair of the grid cross product.
    pub fn full_grid(grid_step: f64) -> Result<Self> {
        let grid = Grid::new(grid_step)?;
        let keys = (0..grid.len())
            .flat_map(|k0| (0..grid.len()).map(move |k1| GridKey(k0, k1)))
            .collect();
        Ok(CandidateSet::from_keys(grid, keys, 0))
    }

    pub fn pairs(&self) -> &[ThresholdPair] {
        &self.pairs
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ThresholdPair> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&ThresholdPair> {
        self.pairs.get(index)
    }

    pub fn position(&self, pair: &ThresholdPair) -> Option<usize> {
        self.pairs.iter().position(|p| p == pair)
    }

    pub fn grid_step(&self) -> f64 {
        self.grid.step()
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn target_positives(&self) -> usize {
        self.target_positives
    }
}

/// For each group, the number of examples whose score reaches each grid value.
fn positives_at_grid(dataset: &Dataset, grid: &Grid) -> [Vec<usize>; 2] {
    Group::BOTH.map(|group| {
        let mut scores: Vec<f64> = dataset
            .iter()
            .filter(|e| e.group() == group)
            .map(|e| e.score())
            .collect();
        scores.sort_by(f64::total_cmp);
        (0..grid.len())
            .map(|k| {
                let t = grid.value(k);
                scores.len() - scores.partition_point(|&s| s < t)
            })
            .collect()
    })
}

/// Enumerates, for every grid value `t`, the pair `(t, t1)` and the pair
/// `(t0, t)` whose positive-prediction count is closest to `target_positives`.
///
/// Companions are scanned in ascending order and only a strictly closer count
/// replaces the incumbent, so the smallest companion wins ties.
pub fn get_thresholds(
    dataset: &Dataset,
    target_positives: usize,
    grid_step: f64,
) -> Result<CandidateSet> {
    let grid = Grid::new(grid_step)?;
    if target_positives > dataset.len() {
        return Err(Error::TargetOutOfRange {
            target: target_positives,
            size: dataset.len(),
        });
    }
    let [counts0, counts1] = positives_at_grid(dataset, &grid);
    let distance = |k0: usize, k1: usize| (counts0[k0] + counts1[k1]).abs_diff(target_positives);

    let closest = |fixed: usize, row: bool| -> GridKey {
        let key = |k: usize| {
            if row {
                GridKey(fixed, k)
            } else {
                GridKey(k, fixed)
            }
        };
        let mut best = key(0);
        let mut best_distance = distance(best.0, best.1);
        for k in 1..grid.len() {
            let candidate = key(k);
            let d = distance(candidate.0, candidate.1);
            if d < best_distance {
                best = candidate;
                best_distance = d;
            }
        }
        best
    };

    let keys = (0..grid.len())
        .flat_map(|t| [closest(t, true), closest(t, false)])
        .collect();
    Ok(CandidateSet::from_keys(grid, keys, target_positives))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::fixtures::{f1, pair};
    use crate::measures::positives_count;

    #[test]
    fn grid_validation() {
        assert_eq!(Grid::new(0.02).unwrap().len(), 51);
        assert_eq!(Grid::new(0.25).unwrap().len(), 5);
        assert_eq!(Grid::new(1.0).unwrap().len(), 2);
        for bad in [0.0, -0.1, 0.3, 1.5, f64::NAN] {
            assert!(matches!(Grid::new(bad), Err(Error::InvalidGridStep(_))));
        }
        let g = Grid::new(0.02).unwrap();
        assert_eq!(g.value(50), 1.0);
        assert_eq!(g.value(27), 0.54);
        assert_eq!(g.index_of(0.54), Some(27));
        assert_eq!(g.index_of(0.41), None);
    }

    #[test]
    fn default_grid_has_51_values() {
        let ds = f1();
        let set = get_thresholds(&ds, 4, 0.02).unwrap();
        let grid = set.grid();
        assert_eq!(grid.len(), 51);
        for p in set.iter() {
            assert!(grid.index_of(p.t0()).is_some());
            assert!(grid.index_of(p.t1()).is_some());
        }
        assert!(set.len() <= 2 * grid.len());
    }

    #[test]
    fn f1_half_grid_contains_balanced_pair() {
        let set = get_thresholds(&f1(), 4, 0.5).unwrap();
        assert!(set.position(&pair(0.5, 0.5)).is_some());
        for p in set.iter() {
            // every row of the 3x3 grid can hit 4 positives exactly or within 2
            assert!(positives_count(&f1(), p).abs_diff(4) <= 2);
        }
    }

    #[test]
    fn all_positive_target_includes_zero_pair() {
        let ds = f1();
        let set = get_thresholds(&ds, ds.len(), 0.1).unwrap();
        assert!(set.position(&pair(0.0, 0.0)).is_some());
    }

    #[test]
    fn canonical_order_and_dedup() {
        let set = CandidateSet::from_pairs(
            [
                pair(0.5, 0.5),
                pair(0.0, 0.0),
                pair(1.0, 0.0),
                pair(0.0, 1.0),
                pair(0.5, 0.5),
            ],
            0.5,
            0,
        )
        .unwrap();
        assert_eq!(
            set.pairs(),
            &[
                pair(0.0, 1.0),
                pair(0.0, 0.0),
                pair(0.5, 0.5),
                pair(1.0, 0.0)
            ]
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        let ds = f1();
        assert!(matches!(
            get_thresholds(&ds, 9, 0.5),
            Err(Error::TargetOutOfRange { .. })
        ));
        assert!(matches!(
            get_thresholds(&ds, 4, 0.3),
            Err(Error::InvalidGridStep(_))
        ));
        assert!(matches!(
            CandidateSet::from_pairs([pair(0.3, 0.5)], 0.5, 0),
            Err(Error::OffGrid { .. })
        ));
        assert!(matches!(
            CandidateSet::from_pairs([], 0.5, 0),
            Err(Error::EmptyCandidates)
        ));
    }

    #[test]
    fn full_grid_cardinality() {
        assert_eq!(CandidateSet::full_grid(0.5).unwrap().len(), 9);
        assert_eq!(CandidateSet::full_grid(0.1).unwrap().len(), 121);
    }

    #[test]
    fn enumeration_is_repeatable() {
        let ds = f1();
        let a = get_thresholds(&ds, 3, 0.1).unwrap();
        let b = get_thresholds(&ds, 3, 0.1).unwrap();
        assert_eq!(a, b);
    }
}
