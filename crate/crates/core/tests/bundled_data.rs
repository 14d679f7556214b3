use qdlab::bundled::Bundled;
use qdlab::io::{parse_surface, surface_to_json, to_pretty, AnySurface};

#[test]
fn shipped_files_match_the_builders() {
    for b in Bundled::ALL {
        let text = to_pretty(&surface_to_json(&b.surface()));
        if std::env::var_os("QDLAB_BLESS").is_some() {
            let path = format!("{}/data/{}.json", env!("CARGO_MANIFEST_DIR"), b.name());
            std::fs::write(path, &text).unwrap();
            continue;
        }
        assert_eq!(b.data(), text, "{}", b.name());
        assert_eq!(parse_surface(b.data()).unwrap(), AnySurface::Exact(b.surface()));
    }
}
