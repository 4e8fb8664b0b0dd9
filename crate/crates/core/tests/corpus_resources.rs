use std::path::PathBuf;

use subdivlab::corpus::{load_example, resource, resource_mask, ExampleId};

fn resource_path(id: ExampleId) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("resources/corpus").join(format!("{id}.json"))
}

#[test]
fn resources_match_builders() {
    let regen = std::env::var_os("SUBDIVLAB_REGEN_CORPUS").is_some();
    for id in ExampleId::ALL {
        let text = load_example(id, &[]).unwrap().to_json();
        if regen {
            std::fs::write(resource_path(id), &text).unwrap();
            continue;
        }
        assert_eq!(resource(id), text, "{id}: resource is stale; rerun with SUBDIVLAB_REGEN_CORPUS=1");
        assert_eq!(resource_mask(id).unwrap(), load_example(id, &[]).unwrap().mask);
    }
}
