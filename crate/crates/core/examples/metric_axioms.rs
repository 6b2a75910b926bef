use fuzzy_shadow::fuzzy_metric::check_axioms;
use fuzzy_shadow::{FuzzyMetric, MetricKind, Space, TNorm};

fn main() {
    for kind in [MetricKind::Standard, MetricKind::RatioPhi, MetricKind::Ratio] {
        let m = FuzzyMetric::from_kind(kind, Space::unit_half_open());
        let r = check_axioms(&m, 10_000, 0);
        println!("{kind:<10} product     all axioms: {}", r.all_pass());
    }

    // the ratio metric needs the product; with the minimum the triangle axiom breaks
    let m = FuzzyMetric::ratio().with_tnorm(TNorm::Minimum);
    let r = check_axioms(&m, 10_000, 0);
    println!(
        "ratio      minimum     all axioms: {}  (triangle failures: {}, first witness {:?})",
        r.all_pass(),
        r.triangle.failures,
        r.triangle.witness
    );
}
