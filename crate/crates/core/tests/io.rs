mod common;

use planar_orient::figures::{figure, NAMES};
use planar_orient::generate::generate;
use planar_orient::io::{read_instance, read_orientation, write_instance, write_orientation};
use planar_orient::verify::run_pipeline;
use planar_orient::Error;

#[test]
fn generated_instances_round_trip_byte_for_byte() {
    for i in 0..30 {
        let g = generate(&common::corpus_spec(i)).unwrap();
        let text = write_instance(&g);
        let back = read_instance(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_instance(&back), text);
    }
}

#[test]
fn figures_round_trip() {
    for name in NAMES {
        let g = figure(name).unwrap().graph;
        assert_eq!(read_instance(&write_instance(&g)).unwrap(), g, "{name}");
    }
    // printed half-lengths survive through the denominator
    let text = write_instance(&figure("deffig").unwrap().graph);
    assert!(text.contains("\"denominator\": 2"));
}

#[test]
fn computed_orientation_round_trips() {
    let g = generate(&common::corpus_spec(4)).unwrap();
    let dirs = run_pipeline(&g).unwrap().orientation.as_bools().unwrap();
    assert_eq!(read_orientation(&g, &write_orientation(&dirs)).unwrap(), dirs);
}

#[test]
fn bad_files_are_rejected() {
    assert!(matches!(read_instance("not json"), Err(Error::MalformedInstance(_))));
    let unknown = r#"{"denominator":1,"nodes":["z","a"],"root":"z","edges":[{"id":0,"u":"z","v":"q","len":1}]}"#;
    assert!(matches!(read_instance(unknown), Err(Error::MalformedInstance(_))));
    let g = figure("lcafig").unwrap().graph;
    assert!(read_orientation(&g, r#"[{"id":0,"dir":"uv"}]"#).is_err());
}
