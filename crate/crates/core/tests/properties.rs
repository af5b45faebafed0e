//! Property tests for the measures, the candidate enumeration and the optimizer.

use lgfo_core::measures::{evaluate, positives_count, predict};
use lgfo_core::optimizer::{
    brute_force_oracle, get_thresholds, minimize_lgfo, per_measure_cost, CandidateSet, CostModel,
    Grid, LgfoParams, MeasureWeights,
};
use lgfo_core::pipeline::{parse_dataset, write_dataset};
use lgfo_core::{Dataset, Group, Measure, ScoredExample, ThresholdPair};
use proptest::prelude::*;

fn score() -> impl Strategy<Value = f64> {
    prop_oneof![(0..=10u8).prop_map(|k| k as f64 / 10.0), 0.0..=1.0f64]
}

fn examples(group: Group, max: usize) -> impl Strategy<Value = Vec<ScoredExample>> {
    prop::collection::vec((score(), any::<bool>()), 1..max).prop_map(move |rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (s, y))| {
                ScoredExample::new(format!("{}-{i}", group.index()), s, group, y).unwrap()
            })
            .collect()
    })
}

fn dataset(max_per_group: usize) -> impl Strategy<Value = Dataset> {
    (
        examples(Group::Zero, max_per_group),
        examples(Group::One, max_per_group),
    )
        .prop_map(|(mut a, b)| {
            a.extend(b);
            Dataset::new(a).unwrap()
        })
}

fn grid_step() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.5), Just(0.25), Just(0.2), Just(0.1)]
}

fn measure_subset() -> impl Strategy<Value = Vec<Measure>> {
    prop::sample::subsequence(Measure::ALL.to_vec(), 1..=3)
}

fn costs() -> impl Strategy<Value = CostModel> {
    (0.0..10.0f64, 0.0..10.0f64)
        .prop_filter("not both zero", |(a, b)| *a > 0.0 || *b > 0.0)
        .prop_map(|(a, b)| CostModel::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn csv_round_trip(ds in dataset(30)) {
        let text = write_dataset(&ds);
        prop_assert_eq!(parse_dataset(text.as_bytes()).unwrap(), ds);
    }

    #[test]
    fn candidates_are_row_optimal(ds in dataset(25), step in grid_step(), frac in 0.0..=1.0f64) {
        let target = (frac * ds.len() as f64).round() as usize;
        let set = get_thresholds(&ds, target, step).unwrap();
        let grid = Grid::new(step).unwrap();
        prop_assert!(set.len() <= 2 * grid.len());

        // every grid value appears as t0 (and as t1) of some candidate whose
        // distance to the target is the best achievable along that row
        let values: Vec<f64> = (0..grid.len()).map(|k| grid.value(k)).collect();
        let distance = |p: &ThresholdPair| positives_count(&ds, p).abs_diff(target);
        for &t in &values {
            let row_best = values
                .iter()
                .map(|&u| distance(&ThresholdPair::new(t, u).unwrap()))
                .min()
                .unwrap();
            let col_best = values
                .iter()
                .map(|&u| distance(&ThresholdPair::new(u, t).unwrap()))
                .min()
                .unwrap();
            prop_assert!(set.iter().any(|p| p.t0() == t && distance(p) == row_best));
            prop_assert!(set.iter().any(|p| p.t1() == t && distance(p) == col_best));
        }
    }

    #[test]
    fn canonical_order_depends_only_on_pairs(ds in dataset(20), step in grid_step()) {
        let set = get_thresholds(&ds, ds.label_positives(), step).unwrap();
        let mut shuffled: Vec<ThresholdPair> = set.pairs().to_vec();
        shuffled.reverse();
        shuffled.extend_from_slice(set.pairs());
        let rebuilt = CandidateSet::from_pairs(shuffled, step, set.target_positives()).unwrap();
        prop_assert_eq!(rebuilt.pairs(), set.pairs());
        for w in set.pairs().windows(2) {
            let (a, b) = (w[0].t0() - w[0].t1(), w[1].t0() - w[1].t1());
            prop_assert!(a < b + 1e-9);
            if (a - b).abs() < 1e-9 {
                prop_assert!(w[0].t0() < w[1].t0());
            }
        }
    }

    #[test]
    fn optimum_beats_every_candidate(
        ds in dataset(20),
        measures in measure_subset(),
        costs in costs(),
        step in grid_step(),
    ) {
        let params = LgfoParams { grid_step: step, ..LgfoParams::new(&ds, &measures, costs).unwrap() };
        let result = minimize_lgfo(&ds, &params).unwrap();
        let best = result.summed_curve.values[result.optimal_index];
        prop_assert!(result.summed_curve.values.iter().all(|&v| best <= v * (1.0 + 1e-12)));
        prop_assert_eq!(result.candidates.pairs()[result.optimal_index], result.optimal);
        prop_assert!(result.summed_curve.values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn single_measure_weight_hits_own_optimum(ds in dataset(20), costs in costs(), step in grid_step()) {
        for m in Measure::ALL {
            let mut params = LgfoParams::new(&ds, &Measure::ALL, costs).unwrap();
            params.grid_step = step;
            params.weights = MeasureWeights::new(
                Measure::ALL.map(|o| (o, if o == m { 1.0 } else { 0.0 })),
            ).unwrap();
            let result = minimize_lgfo(&ds, &params).unwrap();
            prop_assert_eq!(result.curve(m).unwrap().values[result.optimal_index], 0.0);
        }
    }

    #[test]
    fn oracle_matches_on_full_grid(ds in dataset(15), measures in measure_subset(), costs in costs()) {
        let set = CandidateSet::full_grid(0.25).unwrap();
        let weights = MeasureWeights::uniform(&measures).unwrap();
        let oracle = brute_force_oracle(&ds, &set, &weights, &costs);
        for (j, &m) in oracle.measures.iter().enumerate() {
            let curve = per_measure_cost(&ds, &set, m, &costs).unwrap();
            prop_assert_eq!(oracle.measure_curve(j), curve.values);
            for (row, pair) in oracle.table.iter().zip(set.iter()) {
                prop_assert_eq!(row.measure_values[j], evaluate(&ds, pair).get(m).value);
            }
        }
    }

    #[test]
    fn predictions_follow_group_threshold(ds in dataset(20), t0 in 0.0..=1.0f64, t1 in 0.0..=1.0f64) {
        let pair = ThresholdPair::new(t0, t1).unwrap();
        for x in ds.iter() {
            prop_assert_eq!(predict(x, &pair), x.score() >= pair.threshold(x.group()));
        }
    }
}
