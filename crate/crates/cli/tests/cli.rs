use frackin::fractional::Grid;
use frackin::kinetic::{
    build_solution, corollary_params, eval_on, KineticProblem, Mode, ProblemParams,
};
use frackin::special::SeriesSpec;
use frackin::verify::adjudicate;
use frackin_cli::{run_with, EXIT_DOMAIN, EXIT_IO, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("frackin").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn mlf_at_one_point_is_exp() {
    let (code, out, _) = call(&["eval-mlf", "--alpha", "1", "--beta", "1", "--z", "1.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "z,value\n1.5,4.4816890703380645\n");
    assert_eq!(csv_rows(&out)[0][1], 1.5f64.exp());
}

#[test]
fn struve_kinds() {
    let (code, out, _) = call(&["eval-struve", "--l", "0", "--function", "h", "--z", "2"]);
    assert_eq!(code, EXIT_OK);
    let h = csv_rows(&out)[0][1];
    assert!((h - 0.790858849508096).abs() < 1e-15, "{h}");
    let (_, gen, _) = call(&["eval-struve", "--l", "0", "--z", "2"]);
    assert!((csv_rows(&gen)[0][1] - h).abs() < 1e-15);
}

#[test]
fn solve_matches_library_bit_for_bit() {
    let (code, out, _) = call(&[
        "solve",
        "--theorem",
        "1",
        "--lambda",
        "1",
        "--alpha-p",
        "1",
        "--mu",
        "1.5",
        "--l",
        "1",
        "--d",
        "1",
        "--v",
        "0.75",
        "--n0",
        "1",
        "--mode",
        "corrected",
        "--tmin",
        "0.01",
        "--tmax",
        "2",
        "--n",
        "200",
    ]);
    assert_eq!(code, EXIT_OK);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 200);

    let p = KineticProblem::theorem1(SeriesSpec::struve(1.0).unwrap(), 1.0, 0.75, 1.0).unwrap();
    let grid = Grid::uniform(0.01, 2.0, 200).unwrap();
    let sol = build_solution(&p, Mode::Corrected).unwrap();
    let expected = eval_on(&sol, grid.points()).unwrap();
    for ((row, &t), &n) in rows.iter().zip(grid.points()).zip(&expected) {
        assert_eq!(row[0].to_bits(), t.to_bits());
        assert_eq!(row[1].to_bits(), n.to_bits());
    }
}

#[test]
fn verify_reports_library_verdict() {
    let (code, out, _) = call(&[
        "verify",
        "--corollary",
        "1",
        "--d",
        "1",
        "--v",
        "0.75",
        "--n",
        "2048",
    ]);
    assert_eq!(code, EXIT_OK);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let p = corollary_params(1)
        .unwrap()
        .problem(&ProblemParams::default())
        .unwrap();
    let adj = adjudicate(&p, &Grid::uniform_from_origin(2.0, 2048).unwrap()).unwrap();
    assert_eq!(doc["summary"]["adjudication"], adj.verdict.name());
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2048);
    assert_eq!(doc["meta"]["grid"]["n"], 2048);
}

#[test]
fn verify_csv_has_both_residual_columns() {
    let (code, out, _) = call(&[
        "verify",
        "--haubold",
        "--v",
        "0.5",
        "--n",
        "64",
        "--spacing",
        "graded",
        "--format",
        "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("t,residual_paper_stated,residual_corrected\n"));
    assert_eq!(out.lines().count(), 65);
}

#[test]
fn expect_mismatch_exits_four() {
    let p = KineticProblem::theorem1(SeriesSpec::struve(1.0).unwrap(), 1.0, 0.75, 1.0).unwrap();
    let verdict = adjudicate(&p, &Grid::uniform_from_origin(2.0, 256).unwrap())
        .unwrap()
        .verdict;
    for mode in Mode::ALL {
        let (code, out, err) = call(&[
            "verify",
            "--theorem",
            "1",
            "--n",
            "256",
            "--expect",
            mode.name(),
        ]);
        if verdict.passes(mode) {
            assert_eq!(code, EXIT_OK, "{err}");
        } else {
            assert_eq!(code, EXIT_MISMATCH);
            assert!(err.contains("verdict"));
            assert!(out.contains("\"adjudication\""));
        }
    }
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        &["solve", "--theorem", "4", "--mode", "corrected"][..],
        &["solve", "--theorem", "1"],
        &["solve", "--theorem", "1", "--mode", "sideways"],
        &["eval-mlf", "--alpha", "1", "--z", "1", "--colour", "red"],
        &["eval-mlf", "--alpha", "x", "--z", "1"],
        &["verify", "--n", "64"],
        &["transmogrify"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_PARSE, "{args:?}");
        assert!(out.is_empty() && !err.is_empty());
    }
}

#[test]
fn domain_errors_exit_three() {
    for args in [
        &["eval-mlf", "--alpha", "1", "--z", "250"][..],
        &["eval-struve", "--l", "-2", "--z", "1"],
        &["solve", "--theorem", "3", "--mode", "corrected"],
        &["solve", "--theorem", "1", "--mode", "corrected", "--v", "3"],
        &["haubold", "--tmin", "2", "--tmax", "1"],
        &["verify", "--theorem", "1", "--tol", "0"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_DOMAIN, "{args:?}");
        assert!(out.is_empty() && err.starts_with("error:"), "{err}");
    }
}

#[test]
fn unwritable_output_exits_one() {
    let (code, _, err) = call(&["haubold", "--output", "/nonexistent-dir/out.csv"]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("/nonexistent-dir/out.csv"));
}

#[test]
fn output_file_equals_stdout() {
    let path = std::env::temp_dir().join(format!("frackin-cli-{}.json", std::process::id()));
    let args = [
        "corollary",
        "--id",
        "4",
        "--mode",
        "corrected",
        "--lambda",
        "2",
        "--n",
        "50",
        "--format",
        "json",
    ];
    let (_, stdout, _) = call(&args);
    let mut with_file: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_file.extend(["--output", p]);
    let (code, out, _) = call(&with_file);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn haubold_table_and_help() {
    let (code, out, _) = call(&[
        "haubold",
        "--c",
        "2",
        "--v",
        "0.5",
        "--n",
        "10",
        "--spacing",
        "log",
        "--tmin",
        "0.01",
    ]);
    assert_eq!(code, EXIT_OK);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 10);
    assert!(rows.windows(2).all(|w| w[1][1] < w[0][1]));
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}
