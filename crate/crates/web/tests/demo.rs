use scenecloud::Error;
use scenecloud_web::demo;

const LAB: &str = include_str!("../../../fixtures/lab_night.txt");
const IDENTITY: &str = include_str!("../../../fixtures/identity.txt");

#[test]
fn summary_line() {
    let s = demo::summary(LAB).unwrap();
    assert!(
        s.starts_with("6 scenes, 40 unique words, 62 words in all, 5 factors"),
        "{s}"
    );
}

#[test]
fn scene_cloud_has_a_tag_per_scene() {
    let svg = demo::scene_cloud(LAB, 6, false, false).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("data-scene=").count(), 6);
    assert_ne!(svg, demo::scene_cloud(LAB, 6, true, true).unwrap());
}

#[test]
fn character_cloud_uses_given_names() {
    let svg = demo::character_cloud(LAB, "alice, bob", 6).unwrap();
    assert_eq!(svg.matches("data-scene=").count(), 6);
    let err = demo::character_cloud(LAB, "", 6).unwrap_err();
    assert!(matches!(err, Error::UnknownCandidate(w) if w == "grissom"));
}

#[test]
fn factor_map_axes() {
    let svg = demo::factor_map(LAB, 2, 3, true).unwrap();
    assert!(svg.contains("Factor 2") && svg.contains("Factor 3"));
    assert!(matches!(
        demo::factor_map(IDENTITY, 1, 2, false),
        Err(Error::InsufficientFactors { retained: 1 })
    ));
    assert!(demo::factor_map("no headers here", 1, 2, false).is_err());
}
