//! End-to-end checks of the command line front end: JSON in, JSON out,
//! exit-code contract, SVG structure.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cak(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cak"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn cak");
    if let Some(input) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(input.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("cak runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

const TRIANGLE_POINTS: &str = r#"{"points":[
    {"label":"1","at":["0","0"]},
    {"label":"2","at":["1","0"]},
    {"label":"3","at":["0","1"]}]}"#;

const WORKED_PAIR: &str = r#"{"rho":["a","b","c","d"],"sigma":[1,2,2,3,1,3]}"#;

#[test]
fn points2ct_pipeline() {
    let out = cak(&["points2ct", "-"], Some(TRIANGLE_POINTS));
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["swap_pair"]["sigma"].as_array().unwrap().len(), 6);
    assert_eq!(v["chirotope"]["triples"][0]["s"], "+");
}

#[test]
fn points2ct_rejects_collinear_with_exit_2() {
    let collinear = r#"{"points":[
        {"label":"1","at":["0","0"]},
        {"label":"2","at":["1","1"]},
        {"label":"3","at":["2","2"]}]}"#;
    let out = cak(&["points2ct", "-"], Some(collinear));
    assert_eq!(out.status.code(), Some(2));
    // The diagnostic names the offending tangent: three collinear points
    // share the supporting line through them all.
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]
        .as_str()
        .unwrap()
        .contains("genericity violation"));
}

#[test]
fn realize_ct_eq_round_trip() {
    let out = cak(&["realize", "-"], Some(WORKED_PAIR));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let arrangement = String::from_utf8(out.stdout).unwrap();

    let out = cak(&["ct", "-"], Some(&arrangement));
    assert_eq!(out.status.code(), Some(0));
    let ct = stdout_json(&out);
    assert_eq!(ct["depth"], 1);

    // The realized arrangement is equivalent to the original pair.
    let dir = tempdir();
    let arr_path = dir.join("arr.json");
    let sp_path = dir.join("sp.json");
    std::fs::write(&arr_path, &arrangement).unwrap();
    std::fs::write(&sp_path, WORKED_PAIR).unwrap();
    let out = cak(
        &["eq", sp_path.to_str().unwrap(), arr_path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["equivalent"], true);
}

#[test]
fn eq_distinguishes_orientations_with_exit_1() {
    let ccw = r#"{"points":[{"label":"1","at":["0","0"]},{"label":"2","at":["4","1"]},{"label":"3","at":["1","3"]}]}"#;
    let cw = r#"{"points":[{"label":"1","at":["0","0"]},{"label":"2","at":["4","-1"]},{"label":"3","at":["1","-3"]}]}"#;
    let dir = tempdir();
    for (name, pts) in [("ccw", ccw), ("cw", cw)] {
        let out = cak(&["points2ct", "-"], Some(pts));
        let v = stdout_json(&out);
        std::fs::write(
            dir.join(format!("{name}.json")),
            serde_json::to_string(&v["swap_pair"]).unwrap(),
        )
        .unwrap();
    }
    let out = cak(
        &[
            "eq",
            dir.join("ccw.json").to_str().unwrap(),
            dir.join("cw.json").to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["equivalent"], false);
}

#[test]
fn invalid_swap_pair_is_exit_2() {
    let out = cak(&["realize", "-"], Some(r#"{"rho":["a","b"],"sigma":[1]}"#));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orient_reports_non_orientable_with_exit_1() {
    // Two curves crossing four times plus one isolated curve.
    let sp = r#"{"rho":["a","b","c"],"sigma":[1,1,1,1]}"#;
    let out = cak(&["orient", "-"], Some(sp));
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["orientable"], false);
}

#[test]
fn cc_check_round_trip() {
    let out = cak(&["points2ct", "-"], Some(TRIANGLE_POINTS));
    let chi = stdout_json(&out)["chirotope"].clone();
    let out = cak(&["cc", "-"], Some(&serde_json::to_string(&chi).unwrap()));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["cc"], true);
}

#[test]
fn standard_configuration_command() {
    let out = cak(&["standard", "-", "--theta", "1/2"], Some(WORKED_PAIR));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(
        v["configuration"]["crossings"].as_array().unwrap().len(),
        6
    );
}

#[test]
fn layers_and_period_commands() {
    let sp = r#"{"rho":["a","b","c","d","e"],"sigma":[1,1,4,4]}"#;
    let out = cak(&["layers", "-"], Some(sp));
    let v = stdout_json(&out);
    assert_eq!(v["depth"], 2);
    assert_eq!(v["layers"].as_array().unwrap().len(), 3);

    let out = cak(&["period", "-"], Some(r#"{"rho":["a","b"],"sigma":[1,1]}"#));
    assert_eq!(stdout_json(&out)["periodicity"], 2);
}

#[test]
fn enumerate_command() {
    let out = cak(
        &["enumerate", "--n", "3", "--crossings", "6", "--orientable"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["count"], 2);
}

#[test]
fn wiring_command_with_firstpath() {
    let out = cak(&["wiring", "-"], Some(TRIANGLE_POINTS));
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["swaps"].as_array().unwrap().len(), 3);

    // The triangle with labels in ray order around point 1.
    let conv = r#"{"points":[
        {"label":"1","at":["0","0"]},
        {"label":"2","at":["2","-1"]},
        {"label":"3","at":["1","1"]}]}"#;
    let out = cak(&["wiring", "-", "--distinguished", "1"], Some(conv));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["initial"].as_array().unwrap().last().unwrap(), "1");
}

#[test]
fn universal_commands_agree() {
    let set = r#"{"points":[
        {"label":"1","at":["0","0"]},
        {"label":"2","at":["3","-2"]},
        {"label":"3","at":["6","-3"]},
        {"label":"4","at":["9","-2"]},
        {"label":"5","at":["13","2"]}]}"#;
    let dir = tempdir();
    let primal_in = dir.join("primal.json");
    std::fs::write(&primal_in, format!(r#"{{"sets":[{set},{set}]}}"#)).unwrap();
    let out = cak(&["universal-primal", primal_in.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let arrangement = String::from_utf8(out.stdout).unwrap();

    let out = cak(&["wiring", "-", "--distinguished", "1"], Some(set));
    let block = String::from_utf8(out.stdout).unwrap();
    let dual_in = dir.join("dual.json");
    std::fs::write(&dual_in, format!(r#"{{"systems":[{block},{block}]}}"#)).unwrap();
    let out = cak(&["universal-dual", dual_in.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let dual_sp = String::from_utf8(out.stdout).unwrap();

    let arr_path = dir.join("arr.json");
    let sp_path = dir.join("sp.json");
    std::fs::write(&arr_path, &arrangement).unwrap();
    std::fs::write(&sp_path, &dual_sp).unwrap();
    let out = cak(
        &["eq", arr_path.to_str().unwrap(), sp_path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn render_produces_wellformed_svg() {
    let out = cak(&["realize", "-"], Some(WORKED_PAIR));
    let arrangement = String::from_utf8(out.stdout).unwrap();
    let out = cak(&["render", "-", "--width", "400", "--height", "500"], Some(&arrangement));
    assert_eq!(out.status.code(), Some(0));
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"viewBox="0 0 400 500""#));
    // Crude well-formedness: every element opened is closed or self-closed.
    assert_eq!(svg.matches("<svg").count(), svg.matches("</svg>").count());
    assert_eq!(svg.matches("<text").count(), svg.matches("</text>").count());
    // All polygon/polyline coordinates land inside the view box.
    for cap in svg.split("points=\"").skip(1) {
        let coords = cap.split('"').next().unwrap();
        for pair in coords.split_whitespace() {
            let (x, y) = pair.split_once(',').unwrap();
            let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
            assert!((0.0..=400.0).contains(&x), "x={x} outside view box");
            assert!((0.0..=500.0).contains(&y), "y={y} outside view box");
        }
    }
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cak-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
