use kh_web::*;

#[test]
fn trefoil_khovanov() {
    let v: serde_json::Value =
        serde_json::from_str(&khovanov_json("[[3,1,4,6],[1,5,2,4],[5,3,6,2]]", "Q", false).unwrap()).unwrap();
    assert_eq!(v["text"], "1^0_1 1^0_3 1^2_5 1^3_9");
    assert_eq!(v["determinant"], 3);
}

#[test]
fn trefoil_s() {
    let v: serde_json::Value = serde_json::from_str(&lee_json("PD[X[3,1,4,6],X[1,5,2,4],X[5,3,6,2]]").unwrap()).unwrap();
    assert_eq!(v["s"], 2);
}

#[test]
fn grid_trefoil() {
    let v: serde_json::Value =
        serde_json::from_str(&grid_json(r#"{"size":5,"O":[4,3,2,1,0],"X":[1,0,4,3,2]}"#).unwrap()).unwrap();
    assert_eq!(v["total"], 3);
    assert_eq!(v["tau"], 1);
}

#[test]
fn errors_are_messages() {
    assert!(khovanov_json("[[1,2", "Q", false).is_err());
    assert!(khovanov_json("[[3,1,4,6],[1,5,2,4],[5,3,6,2]]", "Z", false).is_err());
    assert!(grid_json(r#"{"size":2,"O":[0,1],"X":[0,1]}"#).is_err());
}
