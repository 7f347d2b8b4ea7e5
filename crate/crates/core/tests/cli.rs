use std::path::PathBuf;
use std::process::{Command, Output};

fn synergy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synergy")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("synergy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const HEADER: &str = "family,n,sigma,rho,phi,delta,chi,algorithm,qspec,comparisons,index_steps,wall_ns,pred_ms,pred_tk,pred_syn,pred_env";

#[test]
fn gen_writes_the_example_template() {
    let out = synergy(&["gen", "--family", "example4", "--n", "9", "--rho", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "7\n8\n9\n4\n5\n6\n1\n2\n3\n");
}

#[test]
fn inconsistent_spec_fails_with_the_constraint() {
    let out = synergy(&["gen", "--family", "example3", "--n", "10", "--rho", "3", "--sigma", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n = rho * sigma"));
}

#[test]
fn empty_algorithm_list_is_header_only() {
    let out = synergy(&["bench", "--algo", ""]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), HEADER);
}

#[test]
fn bench_is_deterministic_apart_from_wall_time() {
    let args = ["bench", "--family", "example1,random", "--n", "300", "--rho", "5", "--seed", "4", "--order", "sorted,ping-pong"];
    let strip = |o: Output| -> Vec<String> {
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .enumerate()
            .map(|(k, l)| {
                let mut f: Vec<&str> = l.split(',').collect();
                if k > 0 {
                    f[11] = "";
                }
                f.join(",")
            })
            .collect()
    };
    let (a, b) = (strip(synergy(&args)), strip(synergy(&args)));
    assert_eq!(a, b);
    assert_eq!(a[0], HEADER);
    // 5 sorters once, 3 query algorithms twice, per instance.
    assert_eq!(a.len(), 1 + 2 * (5 + 3 * 2));
}

#[test]
fn defer_replays_a_trace_file() {
    let inst = scratch("intro.txt");
    let trace = scratch("intro.trace");
    std::fs::write(&inst, "2\n3\n1\n3\n7\n8\n9\n4\n5\n6\n").unwrap();
    std::fs::write(&trace, "S 4\nR 3\n").unwrap();
    for algo in ["ram", "finger"] {
        let fam = format!("file:{}", inst.display());
        let out = synergy(&["defer", "--family", &fam, "--n", "10", "--algo", algo, "--trace", trace.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(String::from_utf8(out.stdout).unwrap(), "S 4\t3\nR 3\t2\n");
    }
    let bench = synergy(&["bench", "--family", &format!("file:{}", inst.display()), "--n", "10", "--algo", "finger", "--queries", "1", "--trace", trace.to_str().unwrap()]);
    assert!(bench.status.success());
    assert!(String::from_utf8(bench.stdout).unwrap().contains(",finger,trace:"));
}

#[test]
fn succinct_round_trips_through_a_file() {
    let path = scratch("cds.bin");
    let p = path.to_str().unwrap();
    let build = synergy(&["succinct", "--algo", "select-aware", "--n", "5000", "--rho", "20", "--select", "1,2500", "--rank", "7", "--out", p]);
    assert!(build.status.success());
    let load = synergy(&["succinct", "--algo", "select-aware", "--load", p, "--select", "1,2500", "--rank", "7"]);
    assert!(load.status.success());
    assert_eq!(build.stdout, load.stdout);
    let wrong_kind = synergy(&["succinct", "--algo", "rank-aware", "--load", p]);
    assert!(!wrong_kind.status.success());
}

#[test]
fn missing_files_name_the_path() {
    let out = synergy(&["defer", "--trace", "/nonexistent/trace.txt"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/trace.txt"));
}
