use lr_grade_web::Demo;

#[test]
fn clicks_refine_and_verify() {
    let mut d = Demo::new(2, 2, "H", 256).unwrap();
    assert_eq!((d.boxes(), d.bsplines()), (1, 9));
    for _ in 0..4 {
        d.refine_at(0.3, 0.6).unwrap();
    }
    assert!(d.boxes() > 4);
    let report: serde_json::Value = serde_json::from_str(&d.verify(200, 1)).unwrap();
    assert_eq!(report["pass"], true);
}

#[test]
fn inspecting_a_box_draws_its_shadow() {
    let mut d = Demo::new(1, 1, "V", 256).unwrap();
    d.refine_at(0.5, 0.5).unwrap();
    d.refine_at(0.2, 0.2).unwrap();
    assert!(!d.svg().contains("class=\"shadow\""));
    let info = d.inspect_at(0.1, 0.1);
    assert!(info.contains("level"), "{info}");
    assert!(d.svg().contains("class=\"shadow\""));
    assert!(d.inspect_at(1.0, 1.0).contains("level"));
    d.refine_curve("circle").unwrap();
    assert!(!d.svg().contains("class=\"shadow\""));
}
