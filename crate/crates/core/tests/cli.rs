use std::path::Path;
use std::process::{Command, Output};

fn swarmopt(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swarmopt"))
        .args(args)
        .current_dir(cwd)
        .env_remove("SWARMOPT_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const QUICK: [&str; 4] = ["--reps", "2", "--population", "10"];

#[test]
fn run_prints_five_checkpoint_columns() {
    let dir = tempfile::tempdir().unwrap();
    let o = swarmopt(
        &["run", "--algorithm", "abc", "--function", "rastrigin", "--dims", "2", "--seed", "42", "--reps", "3"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let header = out.lines().find(|l| l.split_whitespace().next() == Some("iteration")).unwrap();
    let cols: Vec<&str> = header.split_whitespace().skip(1).collect();
    assert_eq!(cols, ["20", "40", "60", "80", "100"]);
    assert!(out.contains("limit        100"));
    assert!(dir.path().join("results/abc_rastrigin_2d_seed42.json").exists());
}

#[test]
fn unknown_function_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = swarmopt(&["run", "--algorithm", "fa", "--function", "nosuch", "--dims", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rastrigin, sphere"));
}

#[test]
fn unknown_flag_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = swarmopt(&["run", "--colour", "blue"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = swarmopt(&["run", "--bounds", "5:1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["json", "csv"] {
        let mut files = Vec::new();
        for name in ["a", "b"] {
            let path = dir.path().join(format!("{name}.{format}"));
            let mut args = vec!["run", "--algorithm", "fa", "--reps", "1", "--seed", "7", "--format", format];
            args.extend(QUICK.iter().skip(2));
            args.extend(["--out", path.to_str().unwrap()]);
            let o = swarmopt(&args, dir.path());
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            files.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(files[0], files[1], "{format} output differs");
    }
    assert!(dir.path().join("a_summary.csv").exists());
}

#[test]
fn env_var_sets_default_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("custom");
    let o = Command::new(env!("CARGO_BIN_EXE_swarmopt"))
        .args(["run", "--algorithm", "abc", "--function", "sphere", "--seed", "3"])
        .args(QUICK)
        .current_dir(dir.path())
        .env("SWARMOPT_OUT_DIR", &target)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(target.join("abc_sphere_2d_seed3.json").exists());
}

fn make_report(dir: &Path, name: &str, algorithm: &str, dims: &str) -> String {
    let path = dir.join(name);
    let mut args = vec!["run", "--algorithm", algorithm, "--dims", dims, "--seed", "11", "--iterations", "50"];
    args.extend(QUICK);
    args.extend(["--out", path.to_str().unwrap()]);
    let o = swarmopt(&args, dir);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path.to_str().unwrap().to_string()
}

#[test]
fn compare_reports() {
    let dir = tempfile::tempdir().unwrap();
    let abc = make_report(dir.path(), "abc.json", "abc", "2");
    let fa = make_report(dir.path(), "fa.json", "fa", "2");
    let abc3 = make_report(dir.path(), "abc3.json", "abc", "3");

    let o = swarmopt(&["compare", &abc, &fa], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("abc")));
    assert!(out.lines().any(|l| l.starts_with("fa")));
    assert!(out.lines().any(|l| l.starts_with("winner")));

    let o = swarmopt(&["compare", &abc, &abc3], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dims"));

    let o = swarmopt(&["compare", &abc, &abc], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let winners = stdout(&o).lines().find(|l| l.starts_with("winner")).unwrap().to_string();
    assert!(winners.split_whitespace().skip(1).all(|w| w == "tie"), "{winners}");
}

#[test]
fn trace_writes_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let abc = make_report(dir.path(), "abc.json", "abc", "2");
    let fa = make_report(dir.path(), "fa.json", "fa", "2");
    let plots = dir.path().join("plots");
    let o = swarmopt(&["trace", &abc, &fa, "--out-dir", plots.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for stem in ["abc", "fa"] {
        let text = std::fs::read_to_string(plots.join(format!("{stem}_plot.csv"))).unwrap();
        assert_eq!(text.lines().next(), Some("iteration,median_best_so_far"));
        assert_eq!(text.lines().count(), 1 + 51);
    }
}

#[test]
fn list_functions() {
    let dir = tempfile::tempdir().unwrap();
    let o = swarmopt(&["list-functions"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let names: Vec<&str> = out.lines().skip(1).filter_map(|l| l.split_whitespace().next()).collect();
    assert_eq!(names, ["rastrigin", "sphere"]);
    assert!(out.contains("0 at origin"));
}
