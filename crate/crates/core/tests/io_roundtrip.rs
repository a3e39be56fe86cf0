use proptest::prelude::*;

use mmatch::io::{matroid_to_value, MatroidSpec};
use mmatch::GroupCtx;

fn spec_strategy() -> impl Strategy<Value = String> {
    let ctxs = prop_oneof![
        Just((r#"{"kind":"free","rank":1}"#, "[1]")),
        Just((r#"{"kind":"free","rank":3}"#, "[2,-1,0]")),
        Just((r#"{"kind":"finite","moduli":[2147483647]}"#, "[3]")),
    ];
    (ctxs, 2usize..=7).prop_flat_map(|((ctx, a), m)| {
        (1..m).prop_flat_map(move |n| {
            let panhandle = (n..m).prop_map(move |s| {
                format!(r#"{{"ctx":{ctx},"panhandle":{{"n":{n},"s":{s},"m":{m},"a":{a}}}}}"#)
            });
            let schubert =
                prop::sample::subsequence((1..=m).collect::<Vec<_>>(), n).prop_map(move |mult| {
                    let s_set: Vec<String> = mult
                        .iter()
                        .map(|j| {
                            let coords: Vec<i64> = serde_json::from_str(a).unwrap();
                            let scaled: Vec<String> =
                                coords.iter().map(|c| (c * *j as i64).to_string()).collect();
                            format!("[{}]", scaled.join(","))
                        })
                        .collect();
                    format!(
                        r#"{{"ctx":{ctx},"schubert":{{"m":{m},"a":{a},"S":[{}]}}}}"#,
                        s_set.join(",")
                    )
                });
            let uniform = Just(format!(
                r#"{{"ctx":{{"kind":"free","rank":1}},"uniform":{{"n":{n},"ground":[{}]}}}}"#,
                (1..=m).map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ));
            prop_oneof![panhandle, schubert, uniform]
        })
    })
}

proptest! {
    #[test]
    fn construct_serialize_parse_is_identity(text in spec_strategy()) {
        let spec = MatroidSpec::from_json(&text).unwrap();
        let m = spec.build().unwrap();

        let again = MatroidSpec::from_value(&spec.to_value()).unwrap();
        prop_assert_eq!(&again, &spec);
        let rebuilt = again.build().unwrap();
        prop_assert_eq!(rebuilt.bases(), m.bases());

        // explicit documents go through the validating constructor, which rejects loops
        prop_assume!(m.is_loopless());
        let doc = matroid_to_value(&m);
        let explicit = MatroidSpec::from_value(&doc).unwrap().build().unwrap();
        prop_assert_eq!(explicit.bases(), m.bases());
        prop_assert_eq!(explicit.ground(), m.ground());
        prop_assert_eq!(explicit.ctx(), m.ctx());
    }
}

#[test]
fn nested_dual_and_direct_sum() {
    let text = r#"{"ctx":{"kind":"free","rank":1},
        "direct_sum":[{"uniform":{"n":1,"ground":[1,2]}},
                      {"dual":{"uniform":{"n":1,"ground":[3,4,5]}}}]}"#;
    let spec = MatroidSpec::from_json(text).unwrap();
    let m = spec.build().unwrap();
    assert_eq!(m.rank(), 3);
    assert_eq!(m.bases().len(), 2 * 3);
    assert_eq!(*m.ctx(), GroupCtx::integers());
    let back = MatroidSpec::from_value(&spec.to_value()).unwrap();
    assert_eq!(back.build().unwrap().bases(), m.bases());
}

#[test]
fn rejects_malformed_documents() {
    for bad in [
        r#"[1,2]"#,
        r#"{"uniform":{"n":1,"ground":[1]},"panhandle":{"n":1,"s":1,"m":2,"a":1}}"#,
        r#"{"uniform":{"n":1,"ground":[1]},"extra":0}"#,
        r#"{"direct_sum":[{"uniform":{"n":1,"ground":[1]}}]}"#,
        r#"{"uniform":{"n":1,"ground":[1.5]}}"#,
    ] {
        assert!(MatroidSpec::from_json(bad).is_err(), "{bad}");
    }
    // loop in an explicit document
    let looped = r#"{"ctx":{"kind":"free","rank":1},"ground":[1,2,3],"bases":[[0,1]]}"#;
    assert!(MatroidSpec::from_json(looped).unwrap().build().is_err());
}
