//! Acceptance suite. One test per criterion; each prints a `PASS` line with
//! the checked tolerances when it succeeds.

mod oracle;

use std::path::PathBuf;
use std::process::Command;

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ordbel::{
    belief_distance, conflict, conjunctive, dempster, ordered_disjunctive, yager, DeltaPolicy,
    DissimilarityMatrix, ElementDistanceMode, FuzzyParams, MassFunction, MatrixKind,
    OrderedElement, OrderedFrame, RuleId,
};

use oracle::BitsetMass;

fn frame(n: usize) -> OrderedFrame {
    OrderedFrame::with_default_labels(n).unwrap()
}

fn el(s: &str) -> OrderedElement {
    s.parse().unwrap()
}

fn cat(n: usize, s: &str) -> MassFunction {
    MassFunction::categorical(frame(n), el(s)).unwrap()
}

fn ordered_avg(n: usize) -> DissimilarityMatrix {
    DissimilarityMatrix::new(&frame(n), MatrixKind::Ordered(ElementDistanceMode::Average))
        .unwrap()
}

/// Random mass function with up to five focal elements.
fn random_mass(rng: &mut StdRng, n: usize) -> MassFunction {
    let f = frame(n);
    let elements: Vec<OrderedElement> = f.elements().filter(|e| !e.is_empty()).collect();
    let focal_count = rng.random_range(1..=elements.len().min(5));
    let entries: Vec<(OrderedElement, f64)> = (0..focal_count)
        .map(|_| {
            let e = elements[rng.random_range(0..elements.len())];
            (e, rng.random_range(0.01..1.0))
        })
        .collect();
    MassFunction::renormalized(f, entries).unwrap()
}

#[test]
fn criterion_01_ordered_power_set_size_formula() {
    for n in 1..=10 {
        let enumerated = frame(n).elements().count();
        assert_eq!(ordbel::ops_size(n).unwrap(), enumerated, "n = {n}");
        assert_eq!(enumerated, 1 + n * (n + 1) / 2, "n = {n}");
    }
    println!("acceptance 1 (power-set size formula, n = 1..10, exact): PASS");
}

/// Regression against the published 7x7 weighting for n = 3, Average mode.
/// The printed source matrix is asymmetric in one cell pair: (w1, w2..w3) is
/// shown as 1/2 while its mirror (w2..w3, w1) is 1/12. The defining formula
/// gives 1/12, so this suite expects 1/12 on both sides and asserts the
/// symmetry that the printed version lacks.
#[test]
fn criterion_02_matrix_regression_n3_with_w1_w2w3_cell_fixed_to_one_twelfth() {
    // Rows follow the canonical enumeration [empty, w1, w2, w1..w2, w3,
    // w2..w3, w1..w3]; entries are exact rationals.
    let expected: [[(u32, u32); 7]; 7] = [
        [(1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
        [(0, 1), (1, 1), (1, 6), (1, 2), (0, 1), (1, 12), (1, 3)],
        [(0, 1), (1, 6), (1, 1), (1, 2), (1, 6), (1, 2), (1, 3)],
        [(0, 1), (1, 2), (1, 2), (1, 1), (1, 12), (1, 3), (2, 3)],
        [(0, 1), (0, 1), (1, 6), (1, 12), (1, 1), (1, 2), (1, 3)],
        [(0, 1), (1, 12), (1, 2), (1, 3), (1, 2), (1, 1), (2, 3)],
        [(0, 1), (1, 3), (1, 3), (2, 3), (1, 3), (2, 3), (1, 1)],
    ];
    let matrix = ordered_avg(3);
    assert_eq!(matrix.dim(), 7);
    #[allow(clippy::needless_range_loop)]
    for i in 0..7 {
        for j in 0..7 {
            let (num, den) = expected[i][j];
            let want = num as f64 / den as f64;
            let got = matrix.get(i, j);
            assert!(
                (got - want).abs() <= 1e-12,
                "entry ({i}, {j}): got {got}, want {num}/{den}"
            );
            assert_eq!(matrix.get(i, j), matrix.get(j, i), "symmetry at ({i}, {j})");
        }
    }
    let one_twelfth = matrix.entry(&el("w1"), &el("w2..w3")).unwrap();
    assert!((one_twelfth - 1.0 / 12.0).abs() <= 1e-12);
    println!(
        "acceptance 2 (7x7 matrix regression, <= 1e-12, (w1, w2..w3) fixed to 1/12 on both \
         sides): PASS"
    );
}

#[test]
fn criterion_03_reference_distances() {
    let ordered = ordered_avg(3);
    let d12 = belief_distance(&cat(3, "w1"), &cat(3, "w2"), &ordered).unwrap();
    assert!((d12 - (5.0f64 / 6.0).sqrt()).abs() <= 1e-12, "got {d12}");
    let d13 = belief_distance(&cat(3, "w1"), &cat(3, "w3"), &ordered).unwrap();
    assert!((d13 - 1.0).abs() <= 1e-12, "got {d13}");

    let plain = DissimilarityMatrix::new(&frame(3), MatrixKind::Plain).unwrap();
    let p12 = belief_distance(&cat(3, "w1"), &cat(3, "w2"), &plain).unwrap();
    let p13 = belief_distance(&cat(3, "w1"), &cat(3, "w3"), &plain).unwrap();
    assert!((p12 - 1.0).abs() <= 1e-12 && (p13 - 1.0).abs() <= 1e-12);
    println!(
        "acceptance 3 (ordered distances sqrt(5/6) and 1, plain both 1, <= 1e-12): PASS"
    );
}

#[test]
fn criterion_04_closure_of_all_rules() {
    let mut rng = StdRng::seed_from_u64(0x04);
    let rules = [
        RuleId::Conjunctive,
        RuleId::Dempster,
        RuleId::Yager,
        RuleId::OrderedDisjunctive,
        RuleId::OrderedDuboisPrade,
        RuleId::Average,
        RuleId::Mixed(DeltaPolicy::Crisp),
        RuleId::Mixed(DeltaPolicy::Fuzzy(
            FuzzyParams::new(0.5, 1.0, ElementDistanceMode::Average).unwrap(),
        )),
    ];
    let mut checked = 0usize;
    for n in 1..=6 {
        let elements: Vec<OrderedElement> = frame(n).elements().collect();
        for _ in 0..1000 {
            let m1 = random_mass(&mut rng, n);
            let m2 = random_mass(&mut rng, n);
            for rule in &rules {
                let out = match rule.apply(&[m1.clone(), m2.clone()]) {
                    Ok(out) => out,
                    // Dempster legitimately fails when the sources fully
                    // conflict; that is not a closure violation.
                    Err(ordbel::Error::TotalConflict) => continue,
                    Err(e) => panic!("{rule:?} failed: {e}"),
                };
                let total: f64 = out.focal().map(|(_, v)| v).sum();
                assert!(
                    (total - 1.0).abs() <= 1e-9,
                    "{rule:?} total mass {total} (n = {n})"
                );
                for (e, _) in out.focal() {
                    assert!(elements.contains(e), "{rule:?} left the power set: {e}");
                }
                checked += 1;
            }
        }
    }
    println!(
        "acceptance 4 (closure + normalization of 8 rules, n <= 6, 1000 pairs per n, \
         {checked} combinations, 1e-9): PASS"
    );
}

#[test]
fn criterion_05_bitset_oracle_equivalence() {
    let mut rng = StdRng::seed_from_u64(0x05);
    for n in 1..=5 {
        for _ in 0..200 {
            let m1 = random_mass(&mut rng, n);
            let m2 = random_mass(&mut rng, n);
            let b1 = BitsetMass::from_mass(&m1);
            let b2 = BitsetMass::from_mass(&m2);

            let conj = conjunctive(&m1, &m2).unwrap();
            assert!(b1.conjunctive(&b2).max_abs_diff(&conj) <= 1e-12);

            match (dempster(&m1, &m2), b1.dempster(&b2)) {
                (Ok(got), Some(want)) => assert!(want.max_abs_diff(&got) <= 1e-12),
                (Err(ordbel::Error::TotalConflict), None) => {}
                (got, want) => panic!("dempster disagreement: {got:?} vs {want:?}"),
            }

            let yg = yager(&m1, &m2).unwrap();
            assert!(b1.yager(&b2).max_abs_diff(&yg) <= 1e-12);

            for x in m1.frame().elements() {
                let mask = oracle::mask_of(&x);
                assert!((m1.bel(&x) - b1.bel(mask)).abs() <= 1e-12);
                assert!((m1.pl(&x) - b1.pl(mask)).abs() <= 1e-12);
            }
            for i in 1..=n {
                assert!((m1.betp(i).unwrap() - b1.betp(i)).abs() <= 1e-12);
            }
        }
    }
    println!(
        "acceptance 5 (conjunctive/Dempster/Yager/bel/pl/BetP vs bitset oracle, n <= 5, \
         200 pairs per n, 1e-12): PASS"
    );
}

#[test]
fn criterion_06_disjunctive_fold_consistency() {
    let mut rng = StdRng::seed_from_u64(0x06);
    for s in [3usize, 4] {
        for _ in 0..100 {
            let n = rng.random_range(1..=4);
            let sources: Vec<MassFunction> =
                (0..s).map(|_| random_mass(&mut rng, n)).collect();
            let nary = ordered_disjunctive(&sources).unwrap();
            let mut folded = ordered_disjunctive(&sources[..2]).unwrap();
            for m in &sources[2..] {
                folded = ordered_disjunctive(&[folded, m.clone()]).unwrap();
            }
            assert!(nary.max_abs_diff(&folded) <= 1e-12);
        }
    }
    println!(
        "acceptance 6 (s-ary disjunctive equals iterated two-way, s = 3..4, 100 each, \
         n <= 4, 1e-12): PASS"
    );
}

#[test]
fn criterion_07_fuzzy_degeneration_and_bounds() {
    for n in 1..=6 {
        let f = frame(n);
        let plain = DissimilarityMatrix::new(&f, MatrixKind::Plain).unwrap();
        let crisp = FuzzyParams::new(0.0, 1.0, ElementDistanceMode::Average).unwrap();
        let degenerate = DissimilarityMatrix::new(&f, MatrixKind::Fuzzy(crisp)).unwrap();
        for i in 0..plain.dim() {
            for j in 0..plain.dim() {
                assert_eq!(degenerate.get(i, j), plain.get(i, j), "alpha = 0 at ({i}, {j})");
            }
        }
        let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
        for alpha in grid {
            for gamma in grid {
                let params =
                    FuzzyParams::new(alpha, gamma, ElementDistanceMode::Average).unwrap();
                let fuzzy = DissimilarityMatrix::new(&f, MatrixKind::Fuzzy(params)).unwrap();
                for i in 0..plain.dim() {
                    for j in 0..plain.dim() {
                        let p = plain.get(i, j);
                        let q = fuzzy.get(i, j);
                        assert!(
                            p <= q + 1e-12 && q <= 1.0 + 1e-12,
                            "bounds at ({i}, {j}): plain {p}, fuzzy {q}"
                        );
                    }
                }
            }
        }
    }
    println!(
        "acceptance 7 (alpha = 0 equals Jaccard exactly, n <= 6; plain <= fuzzy <= 1 on \
         the 5x5 parameter grid): PASS"
    );
}

#[test]
fn criterion_08_ordered_matrix_is_positive_semidefinite() {
    let mut spectrum = Vec::new();
    for n in 2..=7 {
        let matrix = ordered_avg(n);
        let dim = matrix.dim();
        let symmetric = DMatrix::from_fn(dim, dim, |i, j| matrix.get(i, j));
        let eigen = symmetric.symmetric_eigen();
        let min = eigen.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = eigen.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!("  n = {n}: eigenvalue range [{min:.6e}, {max:.6e}]");
        assert!(min >= -1e-9, "n = {n}: minimum eigenvalue {min}");
        spectrum.push(min);
    }
    println!(
        "acceptance 8 (ordered matrix minimum eigenvalue >= -1e-9 for n = 2..7; smallest \
         observed {:.6e}): PASS",
        spectrum.iter().cloned().fold(f64::INFINITY, f64::min)
    );
}

#[test]
fn criterion_09_conflict_semantics() {
    let matrix = ordered_avg(3);
    let m = MassFunction::new(frame(3), [(el("w2"), 0.4), (el("w1..w2"), 0.6)]).unwrap();
    assert_eq!(conflict(&m, &m, &matrix).unwrap(), 0.0);
    let vacuous = MassFunction::vacuous(frame(3));
    assert_eq!(conflict(&m, &vacuous, &matrix).unwrap(), 0.0);

    let near = conflict(&cat(3, "w1"), &cat(3, "w2"), &matrix).unwrap();
    let far = conflict(&cat(3, "w1"), &cat(3, "w3"), &matrix).unwrap();
    assert!((near - (5.0f64 / 6.0).sqrt()).abs() <= 1e-12);
    assert!((far - 1.0).abs() <= 1e-12);
    assert!(near <= far);
    println!(
        "acceptance 9 (conflict zero on self and on the vacuous partner, neighbour \
         conflict below far conflict): PASS"
    );
}

struct CliRun {
    stdout: Vec<u8>,
}

fn run_cli(args: &[&str]) -> CliRun {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let output = Command::new(env!("CARGO_BIN_EXE_ordbel"))
        .args(args)
        .current_dir(&golden)
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "ordbel {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    CliRun {
        stdout: output.stdout,
    }
}

fn golden_bytes(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("missing golden file {name}: {e}"))
}

#[test]
fn criterion_10_cli_golden_files_and_roundtrip() {
    let cases: [(&[&str], &str); 3] = [
        (
            &["combine", "--rule", "odisj", "m_w1.json", "m_w3.json"],
            "combine_odisj.json",
        ),
        (
            &["distance", "--kind", "ordered", "m_w1.json", "m_w2.json"],
            "distance_ordered.txt",
        ),
        (
            &["matrix", "--kind", "ordered", "--n", "3"],
            "matrix_ordered_n3.csv",
        ),
    ];
    for (args, golden) in cases {
        let first = run_cli(args);
        let second = run_cli(args);
        assert_eq!(first.stdout, second.stdout, "{args:?} not deterministic");
        assert_eq!(
            first.stdout,
            golden_bytes(golden),
            "{args:?} deviates from {golden}"
        );
    }

    // Parse/emit round-trip over a generated corpus: combining a document
    // with itself under the average rule reproduces it in canonical form,
    // and re-running on the canonical form is a fixed point.
    let mut rng = StdRng::seed_from_u64(0x10);
    let dir = tempfile::tempdir().unwrap();
    for case in 0..20 {
        let n = rng.random_range(1..=6);
        let mass = random_mass(&mut rng, n);
        let mut doc = String::from("{\n  \"frame\": [");
        for i in 1..=n {
            if i > 1 {
                doc.push_str(", ");
            }
            doc.push_str(&format!("\"w{i}\""));
        }
        doc.push_str("],\n  \"masses\": [\n");
        let focal: Vec<(String, f64)> = mass
            .focal()
            .map(|(e, v)| (e.to_string(), v))
            .collect();
        for (k, (name, value)) in focal.iter().enumerate() {
            doc.push_str(&format!(
                "    {{ \"focal\": \"{name}\", \"mass\": {value} }}{}\n",
                if k + 1 < focal.len() { "," } else { "" }
            ));
        }
        doc.push_str("  ]\n}\n");

        let input = dir.path().join(format!("doc{case}.json"));
        std::fs::write(&input, &doc).unwrap();
        let input = input.to_str().unwrap();

        let once = run_cli(&["combine", "--rule", "avg", input, input]);
        let twice = run_cli(&["combine", "--rule", "avg", input, input]);
        assert_eq!(once.stdout, twice.stdout, "case {case} not deterministic");

        let canonical = dir.path().join(format!("canonical{case}.json"));
        std::fs::write(&canonical, &once.stdout).unwrap();
        let canonical = canonical.to_str().unwrap();
        let fixed_point = run_cli(&["combine", "--rule", "avg", canonical, canonical]);
        assert_eq!(
            once.stdout, fixed_point.stdout,
            "case {case}: canonical emission is not a parse/emit fixed point"
        );
    }
    println!(
        "acceptance 10 (three golden runs byte-identical and matching stored outputs; \
         parse/emit round-trip on 20 documents): PASS"
    );
}
