use std::io::Write;
use std::process::{Command, Output};

fn jlcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jlcalc")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = jlcalc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    jlcalc(args).status.code().unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["dual", "{rho:[0,2]}"]), "{rho:[0,0], rho:[1,1], rho:[2,2]}");
    assert_eq!(stdout(&["lj", "--d", "2", "--expand-u", "l=1", "k=2"]), "-1 * {rho':[0,0]}");
    assert_eq!(stdout(&["count-levi", "4", "2"]), "3");
}

#[test]
fn commands() {
    assert_eq!(stdout(&["order", "{rho:[0,1]}", "{rho:[0],rho:[1]}"]), "<=: true");
    assert_eq!(stdout(&["order", "{rho:[0],rho:[1]}", "{rho:[0,1]}"]), "<=: false");
    assert_eq!(stdout(&["--d", "2", "order", "{rho':[-1,1]}", "{rho':[-1],rho':[1]}"]), "<=: true\n<<: true");
    assert_eq!(
        stdout(&["expand-u", "l=2", "k=2"]),
        "1 * {rho:[-1,0], rho:[0,1]} - 1 * {rho:[-1,1], rho:[0,0]}"
    );
    assert_eq!(stdout(&["--d", "2", "lj", "--unit", "l=1", "k=2"]), "-1 * u'(rho':[0,0],1)");
    assert_eq!(stdout(&["recognize", "{rho:[0,1],rho:[-1,0]}"]), "u(rho:[-1/2,1/2],2)");
    assert_eq!(stdout(&["recognize", "{rho:[0,1]}"]), "none");
    assert_eq!(stdout(&["lfun", "{rho:[0,1]}"]), "(1 - q^(-s-1))^-1");
    assert_eq!(stdout(&["enumerate", "{rho:[0,1],rho:[1]}"]).lines().count(), 2);
    assert_eq!(stdout(&["--json", "count-levi", "6", "3"]).replace(char::is_whitespace, ""), r#"{"count":"15"}"#);
}

#[test]
fn lj_accepts_expressions() {
    let direct = stdout(&["lj", "--d", "2", "1 * {rho:[0,0], rho:[1,1]} - 1 * {rho:[0,1]}"]);
    assert_eq!(direct, stdout(&["lj", "--d", "2", "{rho:[0],rho:[1]} - {rho:[0,1]}"]));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["dual", "{rho:[1,0]}"]), 2);
    assert_eq!(code(&["dual", "{tau:[0]}"]), 2);
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["expand-u", "l=0", "k=2"]), 2);
    assert_eq!(code(&["lj", "{rho:[0]}"]), 1);
    assert_eq!(code(&["expand-ubar", "l=1", "k=2"]), 1);
    assert_eq!(code(&["count-levi", "5", "2"]), 1);
    assert_eq!(code(&["selfcheck", "--suite", "1"]), 0);
    assert_eq!(code(&["selfcheck", "--suite", "7"]), 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "enumerate", "{rho:[0,2],rho:[1]}"][..],
        &["expand-u", "l=3", "k=3"],
        &["--d", "2", "expand-ubar", "l=1", "k=3"],
    ] {
        let a = jlcalc(args);
        let b = jlcalc(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn rendered_labels_parse_back() {
    for label in ["{rho:[0,2]}", "{rho:[0,0], rho:[-1/2,1/2]}"] {
        let dual = stdout(&["dual", label]);
        assert_eq!(stdout(&["dual", &dual]), label);
    }
    let x = stdout(&["expand-u", "l=2", "k=2"]);
    assert_eq!(stdout(&["lj", "--d", "2", &x]), stdout(&["lj", "--d", "2", "--expand-u", "l=2", "k=2"]));
}

#[test]
fn selfcheck_lines() {
    let out = jlcalc(&["selfcheck"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 14);
    for (i, line) in lines.iter().enumerate() {
        let expect = if i == 6 { "FAIL" } else { "PASS" };
        assert!(line.starts_with(&format!("{expect} {:>2} ", i + 1)), "{line}");
    }
}

#[test]
fn global_check_from_files() {
    let mut alg = tempfile::NamedTempFile::new().unwrap();
    write!(alg, r#"{{"places":[{{"name":"v1","d_v":2}},{{"name":"v2","d_v":2}}]}}"#).unwrap();
    let mut cusp = tempfile::NamedTempFile::new().unwrap();
    write!(
        cusp,
        r#"{{"name":"pi","line":"rho","locals":{{"v1":[{{"segment":["-1/2","1/2"]}}],"v2":[{{"segment":[0,0]}}]}}}}"#
    )
    .unwrap();
    let (a, c) = (alg.path().to_str().unwrap(), cusp.path().to_str().unwrap());
    let text = stdout(&["global-check", "--algebra", a, "--cuspidal", c]);
    assert_eq!(
        text,
        "d = 2\ns_rho,D = 2\nMW(pi,2) D-compatible: true\nG^-1(MW(pi,2)) = MW'(pi',1)\n\
         v1: 1 * nu^(-1/2) u'(rho':[0,0],1) x nu^(1/2) u'(rho':[0,0],1)\nv2: -1 * u'(rho':[0,0],1)"
    );
    assert_eq!(code(&["global-check", "--algebra", "/nonexistent", "--cuspidal", c]), 1);
}
